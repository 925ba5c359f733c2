#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "cama/action_space.hpp"
#include "cama/embedder.hpp"

namespace cama {

// Streams every instantiated admissible action (deterministic order,
// duplicate-free) without materializing the whole list. `fn` returns
// false to stop early; the return value says whether the enumeration ran
// to completion.
bool for_each_action(const ActionSpace& space,
                     const std::function<bool(const std::string&)>& fn);

// The candidate did not reach the similarity threshold; carries the best
// score seen and the action that scored it.
struct NeedsRefinement {
  double top_score = 0.0;
  std::string top_action;
};

using GroundResult = std::variant<std::string, NeedsRefinement>;

// Maps a free-form candidate onto an admissible action. An exact match
// (case-insensitive, whitespace-normalized) returns that action
// directly; otherwise the cosine argmax over all admissible actions is
// returned when it reaches the threshold (ties broken by the
// lexicographically smaller action string), else NeedsRefinement.
// Throws InvalidConfig unless 0 < threshold <= 1, EmptyActionSpace when
// the space enumerates to nothing.
GroundResult ground(const std::string& candidate, const ActionSpace& space,
                    double threshold = 0.9,
                    const Embedder& embedder = default_embedder());

struct RefineResult {
  bool grounded = false;
  std::string action;  // set when grounded
  int tries = 0;       // candidates evaluated: min(first success, max_tries)
  std::vector<std::string> rejected;  // candidates that failed, in order
};

// Bounded refinement: grounds candidate0, and on NeedsRefinement asks
// `next_candidate` for a replacement (passing every rejected candidate
// so far, for the not-executable feedback suffix) until one grounds or
// max_tries candidates have been evaluated.
RefineResult refine_loop(
    const std::function<std::string(const std::vector<std::string>&)>&
        next_candidate,
    const std::string& candidate0, const ActionSpace& space,
    int max_tries = 5, double threshold = 0.9,
    const Embedder& embedder = default_embedder());

}  // namespace cama
