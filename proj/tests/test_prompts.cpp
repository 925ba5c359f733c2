#include <string>
#include <vector>

#include "cama/errors.hpp"
#include "cama/feedback.hpp"
#include "cama/memory.hpp"
#include "cama/prompts.hpp"
#include "cama/text_util.hpp"
#include "test_util.hpp"

using namespace cama;

namespace {

std::vector<std::string> load_blocks(const std::string& fixture_name) {
  const std::string raw =
      testutil::read_file(testutil::fixture_path(fixture_name));
  std::vector<std::string> blocks;
  std::vector<std::string> current;
  auto flush = [&] {
    // Drop edge blank lines (the file's trailing newline yields one).
    while (!current.empty() && current.front().empty()) {
      current.erase(current.begin());
    }
    while (!current.empty() && current.back().empty()) current.pop_back();
    if (!current.empty()) blocks.push_back(join(current, "\n"));
    current.clear();
  };
  for (const std::string& line : split_lines(raw)) {
    if (line == "-----8<-----") {
      flush();
    } else {
      current.push_back(line);
    }
  }
  flush();
  REQUIRE(!blocks.empty());
  return blocks;
}

void check_blocks_in_order(const std::string& text,
                           const std::vector<std::string>& blocks) {
  std::size_t pos = 0;
  for (const std::string& block : blocks) {
    const std::size_t found = text.find(block, pos);
    REQUIRE_MESSAGE(found != std::string::npos,
                    "block not found (in order) in rendered prompt:\n"
                        << block);
    pos = found + block.size();
  }
}

MemorySnapshot snapshot_of(const std::vector<std::string>& lines,
                           int source_trial, int source_reward,
                           SnapshotKind kind = SnapshotKind::TRIAL,
                           const std::string& task_description = "") {
  MemorySnapshot s;
  for (const std::string& line : lines) {
    MemoryItem item;
    item.text = line;
    s.items.push_back(item);
  }
  s.source_trial = source_trial;
  s.source_reward = source_reward;
  s.kind = kind;
  s.task_description = task_description;
  return s;
}

TrialTrace small_trace() {
  TrialTrace t;
  t.initial_observation =
      "This room is called the kitchen. In it, you see a stove, a pot and a "
      "thermometer.";
  TrialStep s1;
  s1.rationale = "I need water before I can boil it.";
  s1.action = "pick up pot";
  s1.observation = "You pick up the pot.";
  TrialStep s2;
  s2.rationale = "The stove must be on to heat the pot.";
  s2.action = "activate stove";
  s2.observation = "The stove is now activated.";
  t.steps = {s1, s2};
  t.final_reward = 45;
  t.terminal = TerminalReason::TIMEOUT;
  return t;
}

const std::vector<std::string> kObjects = {"stove", "pot", "thermometer",
                                           "kitchen door"};
const std::vector<std::string> kTemplates = {
    "go to OBJ",   "open OBJ",           "pick up OBJ", "activate OBJ",
    "use OBJ on OBJ", "look around",     "wait",        "focus on OBJ"};

}  // namespace

TEST_CASE("action prompt contains the instruction blocks in order") {
  const MemorySnapshot mem = snapshot_of(
      {"Activating the stove MAY BE NECESSARY to boil water.",
       "Opening the fridge DOES NOT CONTRIBUTE to boil water."},
      0, 20);
  const ChatRequest req = render_action_prompt(
      "Your task is to boil water.", kObjects, kTemplates, &mem, small_trace());

  REQUIRE(req.messages.size() == 2);
  CHECK(req.messages[0].role == "system");
  CHECK(req.messages[1].role == "user");
  CHECK(req.tag == PromptTag::CONTROLLER_EXECUTOR);
  CHECK(req.temperature == 0.0);

  check_blocks_in_order(req.joined_text(),
                        load_blocks("base_prompt_blocks.txt"));
}

TEST_CASE("action prompt lays out the dynamic sections") {
  const MemorySnapshot mem = snapshot_of(
      {"Activating the stove MAY BE NECESSARY to boil water.",
       "Opening the fridge DOES NOT CONTRIBUTE to boil water.",
       "Going to the kitchen SHOULD BE NECESSARY to boil water."},
      1, 35);
  const TrialTrace trace = small_trace();
  const ChatRequest req =
      render_action_prompt("Your task is to boil water.", kObjects, kTemplates,
                           &mem, trace);
  const std::string& user = req.messages[1].content;

  CHECK(user.rfind("TASK: Your task is to boil water.\n", 0) == 0);
  // The objects header keeps its trailing space; objects are one
  // comma-separated line below it.
  CHECK(user.find("Possible objects ( value an OBJ can take ): \n"
                  "stove, pot, thermometer, kitchen door\n") !=
        std::string::npos);
  CHECK(user.find("Possible actions:\ngo to OBJ\nopen OBJ\npick up OBJ\n") !=
        std::string::npos);

  // Learnings keep their 1-based ids in snapshot order.
  const std::size_t l1 = user.find(
      "Learnings:\n1. Activating the stove MAY BE NECESSARY to boil water.\n");
  const std::size_t l2 =
      user.find("2. Opening the fridge DOES NOT CONTRIBUTE to boil water.\n");
  const std::size_t l3 = user.find(
      "3. Going to the kitchen SHOULD BE NECESSARY to boil water.\n");
  REQUIRE(l1 != std::string::npos);
  CHECK(l1 < l2);
  CHECK(l2 < l3);

  // Trace renders as the initial observation then action/observation pairs,
  // after the learnings and before the closing question.
  const std::size_t o0 = user.find("Observation: This room is called the kitchen.");
  const std::size_t a1 = user.find("Action: pick up pot\nObservation: You pick up the pot.\n");
  const std::size_t a2 = user.find(
      "Action: activate stove\nObservation: The stove is now activated.\n");
  const std::size_t q = user.find("What action would you like to do next?");
  REQUIRE(o0 != std::string::npos);
  REQUIRE(a1 != std::string::npos);
  REQUIRE(a2 != std::string::npos);
  REQUIRE(q != std::string::npos);
  CHECK(l3 < o0);
  CHECK(o0 < a1);
  CHECK(a1 < a2);
  CHECK(a2 < q);
  // Rationales stay out of the action prompt.
  CHECK(user.find("I need water before I can boil it.") == std::string::npos);
}

TEST_CASE("action prompt omits the learnings section without memory") {
  const ChatRequest without = render_action_prompt(
      "Your task is to boil water.", kObjects, kTemplates, nullptr,
      small_trace());
  CHECK(without.messages[1].content.find("Learnings:") == std::string::npos);

  const MemorySnapshot empty;
  const ChatRequest with_empty = render_action_prompt(
      "Your task is to boil water.", kObjects, kTemplates, &empty,
      small_trace());
  CHECK(with_empty.messages[1].content.find("Learnings:") ==
        std::string::npos);
}

TEST_CASE("action prompt appends one feedback block per rejected candidate") {
  const ChatRequest req = render_action_prompt(
      "Your task is to boil water.", kObjects, kTemplates, nullptr,
      small_trace(), {"grab the pot", "take pot"});
  const std::string& user = req.messages[1].content;

  const std::size_t f1 =
      user.find("Your previous candidate action was: grab the pot\n"
                "Feedback: the generated candidate action is not executable.");
  const std::size_t f2 =
      user.find("Your previous candidate action was: take pot\n"
                "Feedback: the generated candidate action is not executable.");
  REQUIRE(f1 != std::string::npos);
  REQUIRE(f2 != std::string::npos);
  CHECK(f1 < f2);
  // Feedback comes after the instruction tail.
  CHECK(user.find("please write 'wait' as the next action.") < f1);
}

TEST_CASE("ablated controller prompt asks for a bare action") {
  const MemorySnapshot mem = snapshot_of(
      {"Activating the stove MAY BE NECESSARY to boil water."}, 0, 20);
  const ChatRequest req = render_action_prompt(
      "Your task is to boil water.", kObjects, kTemplates, &mem, small_trace(),
      {}, /*abl_controller=*/true);
  const std::string& user = req.messages[1].content;

  CHECK(user.find("Write ### followed by the single next action you would "
                  "like to take.") != std::string::npos);
  CHECK(user.find("$$$") == std::string::npos);
  CHECK(user.find("First, scan the (unordered) list of learnings") ==
        std::string::npos);
  CHECK(user.find("I used learning id(s):") == std::string::npos);
  // The learnings themselves still render.
  CHECK(user.find("Learnings:\n1. ") != std::string::npos);
}

TEST_CASE("action prompt validates its inputs") {
  CHECK_THROWS_AS(render_action_prompt("t", {}, kTemplates, nullptr, {}),
                  InvalidConfig);
  CHECK_THROWS_AS(render_action_prompt("t", kObjects, {}, nullptr, {}),
                  InvalidConfig);
}

TEST_CASE("action prompt drops oldest trace entries to fit the budget") {
  const MemorySnapshot mem = snapshot_of(
      {"Activating the stove MAY BE NECESSARY to boil water."}, 0, 20);
  TrialTrace trace;
  trace.initial_observation = "You are in the hallway.";
  for (int i = 0; i < 40; ++i) {
    TrialStep s;
    s.action = "look around step " + std::to_string(i);
    s.observation =
        "Observation text for step " + std::to_string(i) +
        " with enough words to make each entry cost a handful of tokens.";
    trace.steps.push_back(s);
  }

  const ChatRequest full = render_action_prompt(
      "Your task is to boil water.", kObjects, kTemplates, &mem, trace);
  REQUIRE(full.messages[1].content.find("look around step 0") !=
          std::string::npos);

  PromptLimits limits;
  limits.token_budget = approx_tokens(full.messages[1].content) - 50;
  const ChatRequest cut =
      render_action_prompt("Your task is to boil water.", kObjects, kTemplates,
                           &mem, trace, {}, false, limits);
  const std::string& user = cut.messages[1].content;
  CHECK(approx_tokens(user) <= limits.token_budget);
  // Oldest entries go first: the initial observation and step 0.
  CHECK(user.find("You are in the hallway.") == std::string::npos);
  CHECK(user.find("look around step 0\n") == std::string::npos);
  // The newest step and the memory always survive.
  CHECK(user.find("look around step 39") != std::string::npos);
  CHECK(user.find("Learnings:\n1. Activating the stove") != std::string::npos);

  PromptLimits tiny;
  tiny.token_budget = 40;
  CHECK_THROWS_AS(render_action_prompt("Your task is to boil water.", kObjects,
                                       kTemplates, &mem, trace, {}, false,
                                       tiny),
                  PromptTooLong);
}

TEST_CASE("adaptation memory prompt matches the instruction blocks") {
  const std::vector<MemorySnapshot> prev = {
      snapshot_of({"Going to the kitchen MAY BE NECESSARY to boil water."}, 0,
                  20),
      snapshot_of({"Activating the stove SHOULD BE NECESSARY to boil water."},
                  1, 45)};
  const ChatRequest req = render_memory_prompt(
      PromptTag::MEM_ADAPT, "Your task is to boil water.", small_trace(), prev,
      reward_to_feedback(45), std::nullopt, /*episode=*/2);

  REQUIRE(req.messages.size() == 2);
  CHECK(req.tag == PromptTag::MEM_ADAPT);
  check_blocks_in_order(req.joined_text(),
                        load_blocks("adapt_prompt_blocks.txt"));

  const std::string& user = req.messages[1].content;
  const std::size_t prev_at = user.find(
      "PREVIOUS LEARNINGS:\n"
      "TASK: Your task is to boil water.\n"
      "EPISODE: 2\n"
      "LEARNINGS (from trial 1, reward 20):\n"
      "1. Going to the kitchen MAY BE NECESSARY to boil water.\n"
      "LEARNINGS (from trial 2, reward 45):\n"
      "1. Activating the stove SHOULD BE NECESSARY to boil water.\n");
  REQUIRE(prev_at != std::string::npos);

  const std::size_t trace_at = user.find(
      "CURRENT TRACE:\n"
      "Task: Your task is to boil water.\n"
      "Observation: This room is called the kitchen.");
  REQUIRE(trace_at != std::string::npos);
  CHECK(prev_at < trace_at);
  CHECK(user.find("Action: pick up pot\n"
                  "Rationale: I need water before I can boil it.\n"
                  "Observation: You pick up the pot.\n") != std::string::npos);

  const std::size_t report_at =
      user.find("EVALUATION REPORT:\nREWARD_FINAL: 45. This means: " +
                reward_to_feedback(45) + "\n");
  REQUIRE(report_at != std::string::npos);
  CHECK(trace_at < report_at);
  CHECK(user.find("Summary of learning as a numbered list:") > report_at);
}

TEST_CASE("adaptation memory prompt renders one label per given snapshot") {
  std::vector<MemorySnapshot> prev;
  for (int i = 0; i < 3; ++i) {
    prev.push_back(snapshot_of({"item"}, i, 10 * i));
  }
  prev.push_back(snapshot_of({"meta item"}, -1, 65, SnapshotKind::META));

  const ChatRequest req = render_memory_prompt(
      PromptTag::MEM_ADAPT, "t", small_trace(), prev, reward_to_feedback(45),
      std::nullopt, 4);
  const std::string& user = req.messages[1].content;

  std::size_t count = 0;
  for (std::size_t at = user.find("LEARNINGS ("); at != std::string::npos;
       at = user.find("LEARNINGS (", at + 1)) {
    ++count;
  }
  CHECK(count == 4);
  CHECK(user.find("LEARNINGS (meta-memory, reward 65):\n1. meta item\n") !=
        std::string::npos);
}

TEST_CASE("adaptation memory prompt with no previous snapshots") {
  const ChatRequest req =
      render_memory_prompt(PromptTag::MEM_ADAPT, "t", small_trace(), {},
                           reward_to_feedback(45));
  const std::string& user = req.messages[1].content;
  // The instruction paragraph still mentions PREVIOUS LEARNINGS; only the
  // section itself must be absent.
  CHECK(user.find("PREVIOUS LEARNINGS:") == std::string::npos);
  CHECK(user.find("EPISODE:") == std::string::npos);
  CHECK(user.find("CURRENT TRACE:\nTask: t\n") != std::string::npos);
}

TEST_CASE("ablated memory prompt drops the canonical-form contract") {
  const ChatRequest req = render_memory_prompt(
      PromptTag::MEM_ADAPT, "t", small_trace(), {}, reward_to_feedback(45),
      std::nullopt, 0, /*abl_causal_memory=*/true);
  const std::string& user = req.messages[1].content;
  CHECK(user.find("can ONLY be of the form") == std::string::npos);
  CHECK(user.find("MAY BE NECCESSARY") == std::string::npos);
  CHECK(user.find("free-form advice") != std::string::npos);
}

TEST_CASE("gen-env memory prompt matches the instruction blocks") {
  std::vector<MemorySnapshot> archive = {
      snapshot_of({"Using the stove MAY BE NECESSARY to boil water."}, 3, 100,
                  SnapshotKind::TRIAL, "Your task is to boil water."),
      snapshot_of({"Using the lighter MAY BE NECESSARY to melt ice."}, 2, 65,
                  SnapshotKind::TRIAL, "Your task is to melt ice.")};
  const ChatRequest req = render_memory_prompt(
      PromptTag::MEM_GEN_ENV, "", TrialTrace{}, archive, "",
      std::string("Your task is to boil acetone."));

  CHECK(req.tag == PromptTag::MEM_GEN_ENV);
  check_blocks_in_order(req.joined_text(),
                        load_blocks("gen_env_prompt_blocks.txt"));

  const std::string& user = req.messages[1].content;
  const std::size_t e1 = user.find(
      "TASK: Your task is to boil water.\n"
      "LEARNINGS:\n"
      "1. Using the stove MAY BE NECESSARY to boil water.\n"
      "EVALUATION REPORT:\n"
      "REWARD_FINAL: 100. This means: " +
      reward_to_feedback(100) + "\n");
  const std::size_t e2 = user.find(
      "TASK: Your task is to melt ice.\n"
      "LEARNINGS:\n"
      "1. Using the lighter MAY BE NECESSARY to melt ice.\n"
      "EVALUATION REPORT:\n"
      "REWARD_FINAL: 65. This means: " +
      reward_to_feedback(65) + "\n");
  REQUIRE(e1 != std::string::npos);
  REQUIRE(e2 != std::string::npos);
  CHECK(e1 < e2);
  const std::size_t nt = user.find("NEW TASK: Your task is to boil acetone.\n");
  REQUIRE(nt != std::string::npos);
  CHECK(e2 < nt);
}

TEST_CASE("gen-task memory prompt matches the instruction blocks") {
  std::vector<MemorySnapshot> archive = {
      snapshot_of({"Going to the greenhouse MAY BE NECESSARY to grow a plant."},
                  1, 80, SnapshotKind::TRIAL,
                  "Your task is to grow a plant.")};
  const ChatRequest req = render_memory_prompt(
      PromptTag::MEM_GEN_TASK, "", TrialTrace{}, archive, "",
      std::string("Your task is to grow an orange tree."));

  CHECK(req.tag == PromptTag::MEM_GEN_TASK);
  check_blocks_in_order(req.joined_text(),
                        load_blocks("gen_task_prompt_blocks.txt"));
  // Gen-task speaks about a single learning list.
  const std::string& user = req.messages[1].content;
  CHECK(user.find("You may be given a list of learnings") !=
        std::string::npos);
  CHECK(user.find("collection of learning lists") == std::string::npos);
}

TEST_CASE("gen prompts say so when no learnings are available") {
  const ChatRequest empty_archive = render_memory_prompt(
      PromptTag::MEM_GEN_ENV, "", TrialTrace{}, {}, "", std::string("t2"));
  CHECK(empty_archive.messages[1].content.find(
            "PREVIOUS LEARNINGS: No learnings available") !=
        std::string::npos);

  std::vector<MemorySnapshot> blank = {
      snapshot_of({}, 0, 0, SnapshotKind::TRIAL, "t")};
  const ChatRequest blank_archive = render_memory_prompt(
      PromptTag::MEM_GEN_TASK, "", TrialTrace{}, blank, "", std::string("t2"));
  CHECK(blank_archive.messages[1].content.find(
            "PREVIOUS LEARNINGS: No learnings available") !=
        std::string::npos);
  // No archive entry renders, so no report section (the instruction
  // paragraph still mentions the words).
  CHECK(blank_archive.messages[1].content.find("EVALUATION REPORT:\n") ==
        std::string::npos);
}

TEST_CASE("gen prompts require the new task") {
  CHECK_THROWS_AS(render_memory_prompt(PromptTag::MEM_GEN_ENV, "",
                                       TrialTrace{}, {}, ""),
                  MissingNewTask);
  CHECK_THROWS_AS(render_memory_prompt(PromptTag::MEM_GEN_TASK, "",
                                       TrialTrace{}, {}, ""),
                  MissingNewTask);
  CHECK_NOTHROW(render_memory_prompt(PromptTag::MEM_ADAPT, "t", small_trace(),
                                     {}, reward_to_feedback(0)));
}

TEST_CASE("prompt tags round-trip through their names") {
  for (PromptTag t :
       {PromptTag::CONTROLLER_EXECUTOR, PromptTag::MEM_ADAPT,
        PromptTag::MEM_GEN_ENV, PromptTag::MEM_GEN_TASK}) {
    CHECK(prompt_tag_from_string(to_string(t)) == t);
  }
  CHECK_THROWS_AS(prompt_tag_from_string("nope"), InvalidConfig);
}

TEST_CASE("token estimate rounds bytes up to a multiple of four") {
  CHECK(approx_tokens("") == 0);
  CHECK(approx_tokens("a") == 1);
  CHECK(approx_tokens("abcd") == 1);
  CHECK(approx_tokens("abcde") == 2);
  CHECK(approx_tokens(std::string(4095, 'x')) == 1024);
}
