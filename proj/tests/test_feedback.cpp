#include "doctest.h"

#include "cama/errors.hpp"
#include "cama/feedback.hpp"

using namespace cama;

TEST_CASE("feedback: fixed sentences at the two anchored scores") {
  CHECK(reward_to_feedback(10) ==
        "The agent performed poorly and made some progress but not enough to "
        "solve the task.");
  CHECK(reward_to_feedback(100) ==
        "The agent has performed exceptionally well and successfully solved "
        "the task.");
}

TEST_CASE("feedback: total on [0,100] and band-monotone") {
  int prev = 0;
  for (int s = 0; s <= 100; ++s) {
    int band = feedback_band(s);
    CHECK(band >= prev);
    CHECK_FALSE(reward_to_feedback(s).empty());
    prev = band;
  }
  CHECK(feedback_band(0) == 0);
  CHECK(feedback_band(19) == 0);
  CHECK(feedback_band(20) == 1);
  CHECK(feedback_band(34) == 1);
  CHECK(feedback_band(35) == 2);
  CHECK(feedback_band(49) == 2);
  CHECK(feedback_band(50) == 3);
  CHECK(feedback_band(64) == 3);
  CHECK(feedback_band(65) == 4);
  CHECK(feedback_band(79) == 4);
  CHECK(feedback_band(80) == 5);
  CHECK(feedback_band(99) == 5);
  CHECK(feedback_band(100) == 6);
}

TEST_CASE("feedback: out-of-range scores throw") {
  CHECK_THROWS_AS(reward_to_feedback(-1), OutOfRange);
  CHECK_THROWS_AS(reward_to_feedback(101), OutOfRange);
}

TEST_CASE("feedback: custom bands are honored") {
  FeedbackBands bands = default_feedback_bands();
  bands.sentences[1] = "Custom low band.";
  CHECK(reward_to_feedback(25, bands) == "Custom low band.");
}
