#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cama/world_config.hpp"

namespace cama {

// Breadth-first search over world states. Returns a shortest action
// sequence that reaches score 100 within max_depth steps (the task's
// max_steps when max_depth <= 0), or nullopt when no such sequence
// exists within the depth and state budget. Deterministic for a given
// bundle.
std::optional<std::vector<std::string>> solve(const Bundle& bundle,
                                              int max_depth = 0);

// Produces n task variants from a base bundle. Variant 0 is the base
// itself; later variants re-draw the start room, the placement of the
// recipe's shuffled objects, and which tool of each alternative group is
// functional (the rest are broken), redrawing until the variant is
// solvable. Deterministic for a given (base, n, seed); a longer run
// extends a shorter one with the same seed.
std::vector<Bundle> make_variants(const Bundle& base, int n,
                                  std::uint64_t seed);

}  // namespace cama
