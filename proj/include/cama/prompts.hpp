#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cama/chat.hpp"
#include "cama/memory.hpp"
#include "cama/trial.hpp"

namespace cama {

struct PromptLimits {
  int token_budget = 32768;
};

// Renders the controller/executor prompt: task, available objects, action
// templates, the current learnings (when any), and the trial so far as
// alternating action/observation lines. `refinement_feedback` holds the
// previously rejected candidate actions; each appends the
// not-executable feedback suffix. When the token budget would be
// exceeded, trace entries are dropped oldest-first (memory is never
// truncated); PromptTooLong is thrown only if the prompt still does not
// fit with an empty trace. With `abl_controller` the response contract
// asks for a bare action (no learning ids, no rationale).
ChatRequest render_action_prompt(
    const std::string& task, const std::vector<std::string>& objects,
    const std::vector<std::string>& action_templates,
    const MemorySnapshot* memory, const TrialTrace& trace,
    const std::vector<std::string>& refinement_feedback = {},
    bool abl_controller = false, const PromptLimits& limits = {});

// Renders a memory-generator prompt.
//   MEM_ADAPT:    current trace + evaluation report + the window of
//                 previous snapshots (`prev`, most recent last).
//   MEM_GEN_ENV / MEM_GEN_TASK:
//                 `prev` is the crucial-memory archive (each snapshot
//                 labeled with its task_description and source_reward);
//                 `new_task` is required, else MissingNewTask. The trace
//                 and reward_feedback arguments are unused.
// `episode` is the number of attempts made before the current one.
// With `abl_causal_memory` the canonical-form contract is replaced by a
// free-form instruction.
ChatRequest render_memory_prompt(
    PromptTag kind, const std::string& task, const TrialTrace& trace,
    const std::vector<MemorySnapshot>& prev, const std::string& reward_feedback,
    const std::optional<std::string>& new_task = std::nullopt,
    int episode = 0, bool abl_causal_memory = false);

}  // namespace cama
