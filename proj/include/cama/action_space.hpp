#pragma once

#include <string>
#include <vector>

namespace cama {

// The admissible-action surface the world exposes at a step: syntactic
// templates (slots spelled OBJ) plus the object names known to the agent.
struct ActionSpace {
  std::vector<std::string> templates;  // e.g. "use OBJ on OBJ", "wait"
  std::vector<std::string> objects;    // e.g. "stove", "kitchen door"
};

// Instantiates every template against the known objects: zero-slot
// templates pass through, one-slot templates take each object, two-slot
// templates take each ordered pair of distinct objects. Duplicates are
// dropped, first occurrence wins; enumeration order is deterministic
// (template-major, then object order as given).
std::vector<std::string> enumerate_actions(const ActionSpace& space);

}  // namespace cama
