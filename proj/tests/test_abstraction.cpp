#include "doctest.h"

#include <random>
#include <vector>

#include "cama/abstraction.hpp"
#include "cama/errors.hpp"
#include "cama/text_util.hpp"
#include "test_util.hpp"

using namespace cama;

TEST_CASE("abstraction: canonical parse of a confident contribution") {
  auto a = parse_abstraction(
      "2. Moving to the greenhouse SHOULD BE NECESSARY to find the pea seeds.");
  CHECK(a.x == "Moving to the greenhouse");
  CHECK(a.y == "find the pea seeds");
  CHECK(a.polarity == Polarity::CONTRIBUTES);
  CHECK(a.certainty == Certainty::CONFIDENT);
}

TEST_CASE("abstraction: canonical parse of a confident non-contribution") {
  auto a = parse_abstraction(
      "10. Moving to the workshop DOES NOT CONTRIBUTE to determining the "
      "dominant or recessive trait in the pea plant.");
  CHECK(a.x == "Moving to the workshop");
  CHECK(a.y ==
        "determining the dominant or recessive trait in the pea plant");
  CHECK(a.polarity == Polarity::DOES_NOT_CONTRIBUTE);
  CHECK(a.certainty == Certainty::CONFIDENT);
}

TEST_CASE("abstraction: Y splits at the first standalone 'to'") {
  auto a = parse_abstraction("Waiting MAY BE NECESSARY to allow growth to allow growth");
  CHECK(a.x == "Waiting");
  CHECK(a.y == "allow growth to allow growth");
  CHECK(a.certainty == Certainty::UNCERTAIN);
}

TEST_CASE("abstraction: misspelled relation phrases are accepted") {
  auto a = parse_abstraction("Opening the lid MAY BE NECCESSARY to see inside.");
  CHECK(a.polarity == Polarity::CONTRIBUTES);
  CHECK(a.certainty == Certainty::UNCERTAIN);
  auto b = parse_abstraction("Opening the lid SHOULD BE NECCESSARY to see inside.");
  CHECK(b.certainty == Certainty::CONFIDENT);
  auto c = parse_abstraction("Stirring IS NECESSARY to mix the paint.");
  CHECK(c.certainty == Certainty::CONFIDENT);
  CHECK(c.polarity == Polarity::CONTRIBUTES);
}

TEST_CASE("abstraction: MAY CONTRIBUTE and MAY BE CONTRIBUTE are uncertain") {
  auto a = parse_abstraction("Waiting a while MAY CONTRIBUTE to the melting.");
  CHECK(a.polarity == Polarity::CONTRIBUTES);
  CHECK(a.certainty == Certainty::UNCERTAIN);
  auto b = parse_abstraction("Waiting a while MAY BE CONTRIBUTE to the melting.");
  CHECK(b.polarity == Polarity::CONTRIBUTES);
  CHECK(b.certainty == Certainty::UNCERTAIN);
}

TEST_CASE("abstraction: MAY NOT CONTRIBUTE is an uncertain non-contribution") {
  auto a = parse_abstraction("Pacing MAY NOT CONTRIBUTE to finishing the task.");
  CHECK(a.polarity == Polarity::DOES_NOT_CONTRIBUTE);
  CHECK(a.certainty == Certainty::UNCERTAIN);
}

TEST_CASE("abstraction: 'for' connector accepted when no 'to' follows") {
  auto a = parse_abstraction(
      "13. Repeating the experiment multiple times MAY BE NECESSARY for more "
      "accurate results.");
  CHECK(a.x == "Repeating the experiment multiple times");
  CHECK(a.y == "more accurate results");
}

TEST_CASE("abstraction: malformed inputs throw") {
  CHECK_THROWS_AS(parse_abstraction(""), MalformedAbstraction);
  CHECK_THROWS_AS(parse_abstraction("This line has no relation phrase."),
                  MalformedAbstraction);
  CHECK_THROWS_AS(parse_abstraction("SHOULD BE NECESSARY to win"),
                  MalformedAbstraction);
  CHECK_THROWS_AS(parse_abstraction("Trying hard SHOULD BE NECESSARY."),
                  MalformedAbstraction);
  CHECK_THROWS_AS(parse_abstraction("Trying hard SHOULD BE NECESSARY to ."),
                  MalformedAbstraction);
}

TEST_CASE("abstraction: format emits the four canonical templates") {
  CausalAbstraction a{"Opening the fridge", "access apple juice",
                      Polarity::CONTRIBUTES, Certainty::CONFIDENT, ""};
  CHECK(format_abstraction(a) ==
        "Opening the fridge SHOULD BE NECESSARY to access apple juice.");
  a.certainty = Certainty::UNCERTAIN;
  CHECK(format_abstraction(a) ==
        "Opening the fridge MAY BE NECESSARY to access apple juice.");
  CausalAbstraction b{"Activating the stove", "boil water",
                      Polarity::DOES_NOT_CONTRIBUTE, Certainty::UNCERTAIN, ""};
  CHECK(format_abstraction(b) ==
        "Activating the stove MAY NOT CONTRIBUTE to boil water.");
  b.certainty = Certainty::CONFIDENT;
  CHECK(format_abstraction(b) ==
        "Activating the stove DOES NOT CONTRIBUTE to boil water.");
}

TEST_CASE("abstraction: round-trip on randomized x/y over all four templates") {
  const std::vector<std::string> words = {
      "opening", "the", "door",  "seed",   "jar",     "plant", "watering",
      "stove",   "pot", "block", "slowly", "quickly", "red",   "box"};
  std::mt19937_64 rng(20240817u);
  auto phrase = [&](int len) {
    std::string p;
    for (int i = 0; i < len; ++i) {
      if (i) p += ' ';
      p += words[rng() % words.size()];
    }
    return p;
  };
  for (int i = 0; i < 500; ++i) {
    CausalAbstraction a;
    a.x = phrase(1 + static_cast<int>(rng() % 4));
    a.y = phrase(1 + static_cast<int>(rng() % 5));
    a.polarity = (rng() & 1) ? Polarity::CONTRIBUTES : Polarity::DOES_NOT_CONTRIBUTE;
    a.certainty = (rng() & 1) ? Certainty::CONFIDENT : Certainty::UNCERTAIN;
    CausalAbstraction back = parse_abstraction(format_abstraction(a));
    CHECK(back == a);
  }
}

TEST_CASE("abstraction: every corpus fixture line parses and round-trips") {
  for (const char* name :
       {"memory_adapt_genetics.txt", "memory_gen_env_friction.txt",
        "memory_gen_task_freeze.txt"}) {
    CAPTURE(name);
    std::string body = testutil::read_file(testutil::fixture_path(name));
    int parsed = 0;
    for (const std::string& line : split_lines(body)) {
      if (trim(line).empty()) continue;
      CAPTURE(line);
      CausalAbstraction a = parse_abstraction(line);
      ++parsed;
      CausalAbstraction back = parse_abstraction(format_abstraction(a));
      CHECK(back == a);
    }
    CHECK(parsed >= 12);
  }
}
