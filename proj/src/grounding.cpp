#include "cama/grounding.hpp"

#include "cama/errors.hpp"
#include "cama/simd.hpp"
#include "cama/text_util.hpp"

namespace cama {

GroundResult ground(const std::string& candidate, const ActionSpace& space,
                    double threshold, const Embedder& embedder) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw InvalidConfig("grounding threshold must be in (0, 1], got " +
                        std::to_string(threshold));
  }

  const std::vector<float> wanted = embedder.embed(candidate);
  const DotFn kernel = active_dot();

  bool any = false;
  bool exact = false;
  std::string exact_action;
  double best_score = -2.0;
  std::string best_action;

  for_each_action(space, [&](const std::string& action) {
    any = true;
    if (equal_normalized(candidate, action)) {
      exact = true;
      exact_action = action;
      return false;  // exact admissibility wins outright
    }
    const std::vector<float> have = embedder.embed(action);
    const double score = kernel(wanted.data(), have.data(), wanted.size());
    if (score > best_score ||
        (score == best_score && action < best_action)) {
      best_score = score;
      best_action = action;
    }
    return true;
  });

  if (!any) throw EmptyActionSpace("action space enumerates to nothing");
  if (exact) return exact_action;
  if (best_score >= threshold) return best_action;
  return NeedsRefinement{best_score, best_action};
}

RefineResult refine_loop(
    const std::function<std::string(const std::vector<std::string>&)>&
        next_candidate,
    const std::string& candidate0, const ActionSpace& space, int max_tries,
    double threshold, const Embedder& embedder) {
  if (max_tries < 1) {
    throw InvalidConfig("refine_loop needs max_tries >= 1");
  }

  RefineResult result;
  std::string candidate = candidate0;
  for (int t = 1; t <= max_tries; ++t) {
    result.tries = t;
    const GroundResult g = ground(candidate, space, threshold, embedder);
    if (const std::string* action = std::get_if<std::string>(&g)) {
      result.grounded = true;
      result.action = *action;
      return result;
    }
    result.rejected.push_back(candidate);
    if (t == max_tries) break;
    candidate = next_candidate(result.rejected);
  }
  return result;
}

}  // namespace cama
