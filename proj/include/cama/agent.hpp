#pragma once

#include <string>
#include <vector>

#include "cama/action_space.hpp"
#include "cama/backend.hpp"
#include "cama/memory.hpp"
#include "cama/prompts.hpp"
#include "cama/trial.hpp"

namespace cama {

enum class SpecialAction { NONE, TASK_COMPLETE, FOCUS, WAIT, AMBIGUITY_CHOICE };

const char* to_string(SpecialAction s);

// One controller/executor decision: the learning ids the model claims to
// have used, its rationale (the goal being pursued), and the candidate
// action. With special == NONE the candidate action is handed to
// grounding verbatim.
struct AgentDecision {
  std::vector<int> used_learning_ids;
  std::string rationale;
  std::string candidate_action;
  SpecialAction special = SpecialAction::NONE;
  int ambiguity_choice = -1;  // special == AMBIGUITY_CHOICE
  std::string focus_object;   // special == FOCUS
  int dropped_ids = 0;        // malformed or out-of-range learning ids
};

// Parses a completion against the response contract: optional
// "I used learning id(s):" comma list, optional "$$$" rationale, then
// "###" followed by the action. TASK_COMPLETE / FOCUS ON <OBJ> / wait
// are recognized specials (tolerating case and one trailing period).
// With `after_ambiguous`, a bare integer (alone or after "###") parses
// as AMBIGUITY_CHOICE. Throws UnparseableResponse when no "###" marker
// is present or the action text is empty.
AgentDecision parse_decision(const std::string& completion,
                             bool after_ambiguous = false);

struct AgentConfig {
  bool abl_controller = false;  // ask for a bare action, no ids/rationale
  PromptLimits limits;
};

// Controller and executor in one model call per step.
class Agent {
 public:
  explicit Agent(Backend& backend, AgentConfig config = {});

  // Renders the action prompt, completes it, and parses the decision.
  // On a parse failure the prompt is re-asked once with a format
  // reminder appended; a second failure raises UnparseableResponse.
  // Learning ids outside 1..|memory| are dropped and counted.
  AgentDecision decide(const std::string& task, const MemorySnapshot* memory,
                       const TrialTrace& trace, const ActionSpace& space,
                       const std::vector<std::string>& refinement_feedback = {},
                       bool after_ambiguous = false);

  // Total ids dropped across all decide() calls on this agent.
  int dropped_id_total() const { return dropped_id_total_; }

 private:
  Backend* backend_;
  AgentConfig config_;
  int dropped_id_total_ = 0;
};

}  // namespace cama
