#include "doctest.h"

#include "cama/episode.hpp"
#include "cama/errors.hpp"
#include "cama/memory.hpp"
#include "cama/text_util.hpp"
#include "test_util.hpp"

using namespace cama;

namespace {

EpisodeRecord episode_with_rewards(const std::string& id,
                                   const std::vector<int>& rewards) {
  EpisodeRecord ep;
  ep.task_id = id;
  ep.task_description = "Task " + id;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    TrialTrace t;
    t.final_reward = rewards[i];
    t.terminal = TerminalReason::TIMEOUT;
    ep.trials.push_back(t);
    MemorySnapshot s;
    s.source_trial = static_cast<int>(i);
    s.source_reward = rewards[i];
    s.items.push_back(MemoryItem{
        std::nullopt, "marker " + id + " trial " + std::to_string(i)});
    ep.snapshots.push_back(s);
  }
  return ep;
}

}  // namespace

TEST_CASE("memory: corpus fixtures parse with zero drops in LENIENT mode") {
  struct Case {
    const char* file;
    std::size_t expect;
  };
  for (const Case& c : {Case{"memory_adapt_genetics.txt", 12},
                        Case{"memory_gen_env_friction.txt", 15},
                        Case{"memory_gen_task_freeze.txt", 15}}) {
    CAPTURE(c.file);
    std::string body = testutil::read_file(testutil::fixture_path(c.file));
    MemorySnapshot snap = parse_memory(body, ParseMode::LENIENT);
    CHECK(snap.size() == c.expect);
    CHECK(snap.dropped_lines == 0);
    MemorySnapshot strict = parse_memory(body, ParseMode::STRICT);
    CHECK(strict.size() == c.expect);
  }
}

TEST_CASE("memory: STRICT propagates malformed lines, LENIENT drops and counts") {
  std::string body =
      "1. Opening the door SHOULD BE NECESSARY to enter the kitchen.\n"
      "some free-form chatter\n"
      "2. Waiting MAY BE NECESSARY to let the water boil.\n";
  CHECK_THROWS_AS(parse_memory(body, ParseMode::STRICT), MalformedAbstraction);
  MemorySnapshot snap = parse_memory(body, ParseMode::LENIENT);
  CHECK(snap.size() == 2);
  CHECK(snap.dropped_lines == 1);
}

TEST_CASE("memory: zero parsable items") {
  CHECK_THROWS_AS(parse_memory("", ParseMode::STRICT), EmptyMemory);
  MemorySnapshot snap = parse_memory("no learnings here\n", ParseMode::LENIENT);
  CHECK(snap.empty());
  CHECK(snap.dropped_lines == 1);
}

TEST_CASE("memory: items keep stable 1-based positions in numbered_text") {
  std::string body = testutil::read_file(
      testutil::fixture_path("memory_adapt_genetics.txt"));
  MemorySnapshot snap = parse_memory(body, ParseMode::STRICT);
  auto lines = split_lines(snap.numbered_text());
  REQUIRE(lines.size() >= 12);
  CHECK(lines[1].rfind("2. ", 0) == 0);
  CHECK(lines[1] ==
        "2. Moving to the greenhouse SHOULD BE NECESSARY to find the pea "
        "seeds.");
  // Re-serialization preserves ids.
  MemorySnapshot again = parse_memory(snap.numbered_text(), ParseMode::STRICT);
  REQUIRE(again.size() == snap.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again.items[i].text == snap.items[i].text);
  }
}

TEST_CASE("memory: opaque ingestion stores lines verbatim without parses") {
  MemorySnapshot snap = parse_memory_opaque(
      "1. run around shouting\n2. whatever helps, do it\n");
  REQUIRE(snap.size() == 2);
  CHECK_FALSE(snap.items[0].parsed.has_value());
  CHECK(snap.items[0].text == "run around shouting");
  CHECK(snap.items[1].text == "whatever helps, do it");
}

TEST_CASE("memory: crucial selection picks best trial, earliest on ties") {
  std::vector<EpisodeRecord> eps;
  eps.push_back(episode_with_rewards("alpha", {10, 50, 50}));
  auto picks = select_crucial_memories(eps, 10);
  REQUIRE(picks.size() == 1);
  CHECK(picks[0].first.source_trial == 1);
  CHECK(picks[0].second == 50);
  CHECK(picks[0].first.task_description == "Task alpha");
}

TEST_CASE("memory: crucial selection caps to most recent episodes") {
  std::vector<EpisodeRecord> eps;
  for (int i = 0; i < 12; ++i) {
    eps.push_back(episode_with_rewards("ep" + std::to_string(i), {i, 100 - i}));
  }
  auto picks = select_crucial_memories(eps, 10);
  REQUIRE(picks.size() == 10);
  // Oldest two episodes fall out; order is preserved.
  CHECK(picks.front().first.task_description == "Task ep2");
  CHECK(picks.back().first.task_description == "Task ep11");
  for (std::size_t i = 0; i < picks.size(); ++i) {
    CHECK(picks[i].second == 100 - static_cast<int>(i + 2));
  }
}

TEST_CASE("memory: crucial selection degenerate cases") {
  CHECK_THROWS_AS(select_crucial_memories({}, 10), NoEpisodes);
  std::vector<EpisodeRecord> eps;
  eps.push_back(episode_with_rewards("solo", {0}));
  auto picks = select_crucial_memories(eps, 10);
  REQUIRE(picks.size() == 1);
  CHECK(picks[0].second == 0);
  CHECK(picks[0].first.source_trial == 0);
}
