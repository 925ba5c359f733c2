#pragma once

#include <array>
#include <string>

namespace cama {

// Sentences for the seven score bands
// [0,20) [20,35) [35,50) [50,65) [65,80) [80,100) {100}.
// The first and last sentences are fixed; the middle five are defaults
// that a run config may override (band-monotone wording expected).
struct FeedbackBands {
  std::array<std::string, 7> sentences;
};

const FeedbackBands& default_feedback_bands();

// Band index 0..6 for a score in [0,100]. Throws OutOfRange otherwise.
int feedback_band(int score);

// Natural-language feedback for a final reward.
std::string reward_to_feedback(int score);
std::string reward_to_feedback(int score, const FeedbackBands& bands);

}  // namespace cama
