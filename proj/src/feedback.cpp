#include "cama/feedback.hpp"

#include "cama/errors.hpp"

namespace cama {

const FeedbackBands& default_feedback_bands() {
  static const FeedbackBands bands{{
      "The agent performed poorly and made some progress but not enough to "
      "solve the task.",
      "The agent performed below average and made limited progress but not "
      "enough to solve the task.",
      "The agent performed moderately and made partial progress but not "
      "enough to solve the task.",
      "The agent performed fairly well and made notable progress but did not "
      "solve the task.",
      "The agent performed well and made substantial progress but did not "
      "solve the task.",
      "The agent performed very well and was close to solving the task but "
      "did not solve it.",
      "The agent has performed exceptionally well and successfully solved "
      "the task.",
  }};
  return bands;
}

int feedback_band(int score) {
  if (score < 0 || score > 100) {
    throw OutOfRange("reward " + std::to_string(score) + " outside [0, 100]");
  }
  if (score == 100) return 6;
  if (score >= 80) return 5;
  if (score >= 65) return 4;
  if (score >= 50) return 3;
  if (score >= 35) return 2;
  if (score >= 20) return 1;
  return 0;
}

std::string reward_to_feedback(int score) {
  return reward_to_feedback(score, default_feedback_bands());
}

std::string reward_to_feedback(int score, const FeedbackBands& bands) {
  return bands.sentences[static_cast<std::size_t>(feedback_band(score))];
}

}  // namespace cama
