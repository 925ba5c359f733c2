#pragma once

#include <string>
#include <vector>

namespace cama {

enum class TerminalReason { RUNNING, COMPLETE, FAILED_FOCUS, TIMEOUT, FAILED };

const char* to_string(TerminalReason r);
TerminalReason terminal_reason_from_string(const std::string& s);

// One executed step of a trial: the rationale (goal) behind the action,
// the action as executed (or the last rejected candidate), the resulting
// observation, and the cumulative score after the step.
struct TrialStep {
  std::string rationale;
  std::string action;
  std::string observation;
  int score = 0;
  // "" | "task_complete" | "focus" | "wait" | "ambiguity_choice" |
  // "refine_failure"
  std::string special;
  std::vector<int> used_ids;
};

// One attempt at a task: ordered steps plus the final reward.
struct TrialTrace {
  std::string initial_observation;
  std::vector<TrialStep> steps;
  int final_reward = 0;
  TerminalReason terminal = TerminalReason::RUNNING;
};

}  // namespace cama
