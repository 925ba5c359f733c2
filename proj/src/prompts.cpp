#include "cama/prompts.hpp"

#include <sstream>

#include "cama/errors.hpp"
#include "cama/feedback.hpp"

namespace cama {

namespace {

// ---- controller/executor prompt text ----------------------------------

constexpr const char* kActionSystem =
    "You are an AI agent helping execute a science experiment in a simulated "
    "environment with limited number of objects and actions available at "
    "each step.";

constexpr const char* kObjectsHeader =
    "Possible objects ( value an OBJ can take ): ";

constexpr const char* kActionsHeader =
    "Your next action should be in one of the following formats:\n"
    "Possible actions:";

constexpr const char* kAmbiguous =
    "If I say \"Ambiguous request\", your action might mean multiple things. "
    "In that case, respond with the number corresponding to the action you "
    "want to take.";

constexpr const char* kWhatNext = "What action would you like to do next?";

constexpr const char* kScanLearnings =
    "First, scan the (unordered) list of learnings, if provided. Decide if "
    "any of the learnings are applicable given the last observation to make "
    "progress in this task. Then only use selected learnings, if any, to "
    "construct a rationale for picking the next action. If no Learning is "
    "selected, construct the rationale based on the last observation. Format "
    "your response as follows:";

constexpr const char* kResponseContract =
    "Write 'I used learning id(s):' as a comma separated list; the list can "
    "be empty if no learnings selected. Then, write $$$ followed by the "
    "rationale. Finally, write ### followed by the single next action you "
    "would like to take.";

constexpr const char* kBareContract =
    "Write ### followed by the single next action you would like to take.";

constexpr const char* kTaskComplete =
    "If you think you have completed the task, please write TASK_COMPLETE as "
    "the next action.";

constexpr const char* kFocusRules =
    "If the task requires you to 'focus' on something (OBJ), please write "
    "FOCUS ON <OBJ> as the next action. FOCUS is a extremely critical action "
    "that can be only used the number of times 'focus' is mentioned in the "
    "task description. Using it more than that or inappropiately (such as on "
    "a wrong object) will terminate the session and the task will be "
    "rendered as incomplete.";

constexpr const char* kWaitRule =
    "If you performed an action that requires waiting to see the effect, "
    "please write 'wait' as the next action.";

constexpr const char* kNotExecutable =
    "Feedback: the generated candidate action is not executable.";

// ---- memory-generator prompt text --------------------------------------

constexpr const char* kMemSystem = "You are an expert assistant.";

constexpr const char* kAdaptIntro =
    "You are given CURRENT TRACE, a sequence of actions that an agent made "
    "in a world to accomplish a task.";

constexpr const char* kAdaptTraceNotes =
    "Task is detailed at the beginning.\n"
    "For each action, there is a rationale why the agent made that action.\n"
    "There is an observation that provide details about the new state of the "
    "world after each action was executed.\n"
    "The CURRENT TRACE is accompanied by an EVALUATION REPORT indicating the "
    "success of the attempt to the task.";

constexpr const char* kAdaptPrevNotes =
    "You can also be provided with PREVIOUS LEARNINGS which are learnings "
    "from the previous attempts by the agent for the same task in the same "
    "environment/world. TASK indicates the task description. EPISODE "
    "indicates the number of previous attempts of the task.";

constexpr const char* kAdaptGoal =
    "Generate a summary of learning, as a numbered list, that will help the "
    "agent to successfully accomplish the SAME task AGAIN, in the SAME "
    "world.";

constexpr const char* kAdaptForms =
    "Each numbered item in the summary can ONLY be of the form:\n"
    "X MAY BE NECCESSARY to Y.\n"
    "X SHOULD BE NECCESSARY to Y.\n"
    "X MAY BE CONTRIBUTE to Y.\n"
    "X DOES NOT CONTRIBUTE to Y.";

constexpr const char* kGenForms =
    "Each numbered item in the summary can ONLY be of the form:\n"
    "X MAY BE NECCESSARY to Y.\n"
    "X SHOULD BE NECCESSARY to Y.\n"
    "X MAY NOT CONTRIBUTE to Y.\n"
    "X DOES NOT CONTRIBUTE to Y.";

constexpr const char* kFreeForms =
    "Each numbered item in the summary is free-form advice: one short "
    "sentence per item describing what to do or to avoid.";

constexpr const char* kGenEnvIntro =
    "You are given a collection of learning lists, that are derived from "
    "actions made by an agent and subsequent observations from a world to "
    "accomplish a TYPE of TASKs. All of these TASKs belong to a same TYPE "
    "(such as 'boiling') but they are executed in different ENVIRONMENT "
    "configurations. A different ENVIRONMENT configuration means there are "
    "presence of a different set of objects (lighter instead of a stove) "
    "that are critical for solving the TASK, presence of a different set of "
    "distractor objects that are not useful for the TASK, a different floor "
    "plan, etc.";

constexpr const char* kGenEnvTaskNote =
    "For each learning list, the TASK description is provided at the "
    "beginning as TASK:";

constexpr const char* kGenEnvBestNote =
    "Each learning list indicates a list of learnings from the agent's best "
    "attempt to solve the TASK.";

constexpr const char* kGenEnvEvalNote =
    "Each learning list is associated with an EVALUATION REPORT indicated "
    "how sucessful the respective attempt was for solving the task.";

constexpr const char* kGenEnvGoal =
    "Consider all learning lists and combine them in to a summary of "
    "learnings, as a numbered list, that will help the agent to successfully "
    "accomplish a NEW TASK related to the previous TASKs (such as 'boliing') "
    "in an ENVIRONMENT configuration that it has not seen before. The NEW "
    "TASK description will be provided.";

constexpr const char* kGenTaskIntro =
    "You may be given a list of learnings, that are derived from actions "
    "made by an agent and subsequent observations from a world to accomplish "
    "a TASK in an ENVIRONMENT CONFIGURATION.";

constexpr const char* kGenTaskTaskNote =
    "For the learning list, the TASK description is provided at the "
    "beginning as TASK:";

constexpr const char* kGenTaskBestNote =
    "The learnings are from the agent's best attempt to solve the TASK.";

constexpr const char* kGenTaskEvalNote =
    "The learning list is associated with an EVALUATION REPORT indicated how "
    "sucessful the attempt was for solving the task.";

constexpr const char* kGenTaskGoal =
    "Now, generate a summary of learnings from the existing ones if "
    "provided, such that they will be useful to the NEW TASK in the SAME "
    "ENVIRONMENT CONFIGURATION. The NEW TASK may require different actions "
    "which are not captured in the given learnings but given learnings can "
    "be used to infer about the ENVIRONMENT CONFIGURATION. The NEW TASK "
    "description will be given. If PREVIOUS LEARNINGS says 'No learnings "
    "available', improvise learnings for the NEW TASK.";

constexpr const char* kNoLearnings = "No learnings available";

constexpr const char* kSummaryAsk = "Summary of learning as a numbered list:";

std::string learnings_label(const MemorySnapshot& s) {
  std::ostringstream out;
  if (s.kind == SnapshotKind::META) {
    out << "LEARNINGS (meta-memory, reward " << s.source_reward << "):";
  } else {
    out << "LEARNINGS (from trial " << (s.source_trial + 1) << ", reward "
        << s.source_reward << "):";
  }
  return out.str();
}

std::string current_trace_block(const std::string& task,
                                const TrialTrace& trace) {
  std::ostringstream out;
  out << "CURRENT TRACE:\n";
  out << "Task: " << task << "\n";
  if (!trace.initial_observation.empty()) {
    out << "Observation: " << trace.initial_observation << "\n";
  }
  for (const TrialStep& s : trace.steps) {
    out << "Action: " << s.action << "\n";
    out << "Rationale: " << s.rationale << "\n";
    out << "Observation: " << s.observation << "\n";
  }
  return out.str();
}

}  // namespace

ChatRequest render_action_prompt(
    const std::string& task, const std::vector<std::string>& objects,
    const std::vector<std::string>& action_templates,
    const MemorySnapshot* memory, const TrialTrace& trace,
    const std::vector<std::string>& refinement_feedback, bool abl_controller,
    const PromptLimits& limits) {
  if (objects.empty()) throw InvalidConfig("render_action_prompt: no objects");
  if (action_templates.empty()) {
    throw InvalidConfig("render_action_prompt: no action templates");
  }

  std::string objects_str;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (i) objects_str += ", ";
    objects_str += objects[i];
  }
  std::string actions_str;
  for (std::size_t i = 0; i < action_templates.size(); ++i) {
    if (i) actions_str += "\n";
    actions_str += action_templates[i];
  }

  std::string head;
  head += "TASK: " + task + "\n\n";
  head += std::string(kObjectsHeader) + "\n" + objects_str + "\n\n";
  head += std::string(kActionsHeader) + "\n" + actions_str + "\n\n";
  head += std::string(kAmbiguous) + "\n\n";
  if (memory != nullptr && !memory->empty()) {
    head += "Learnings:\n" + memory->numbered_text() + "\n";
  }

  // Trace entries, oldest first, each independently droppable.
  std::vector<std::string> entries;
  if (!trace.initial_observation.empty()) {
    entries.push_back("Observation: " + trace.initial_observation + "\n");
  }
  for (const TrialStep& s : trace.steps) {
    entries.push_back("Action: " + s.action + "\nObservation: " +
                      s.observation + "\n");
  }

  std::string tail;
  tail += std::string(kWhatNext) + "\n\n";
  if (abl_controller) {
    tail += std::string(kBareContract) + "\n\n";
  } else {
    tail += std::string(kScanLearnings) + "\n\n";
    tail += std::string(kResponseContract) + "\n\n";
  }
  tail += std::string(kTaskComplete) + "\n\n";
  tail += std::string(kFocusRules) + "\n\n";
  tail += kWaitRule;
  for (const std::string& candidate : refinement_feedback) {
    tail += "\n\nYour previous candidate action was: " + candidate + "\n";
    tail += kNotExecutable;
  }

  std::size_t first_entry = 0;
  std::string user;
  while (true) {
    user = head;
    for (std::size_t i = first_entry; i < entries.size(); ++i) user += entries[i];
    if (!entries.empty() && first_entry < entries.size()) user += "\n";
    user += tail;
    if (approx_tokens(user) <= limits.token_budget) break;
    if (first_entry >= entries.size()) {
      throw PromptTooLong("action prompt exceeds token budget " +
                          std::to_string(limits.token_budget) +
                          " even with an empty trace");
    }
    ++first_entry;  // drop the oldest trace entry, never the memory
  }

  ChatRequest req;
  req.tag = PromptTag::CONTROLLER_EXECUTOR;
  req.messages.push_back({"system", kActionSystem});
  req.messages.push_back({"user", user});
  return req;
}

ChatRequest render_memory_prompt(PromptTag kind, const std::string& task,
                                 const TrialTrace& trace,
                                 const std::vector<MemorySnapshot>& prev,
                                 const std::string& reward_feedback,
                                 const std::optional<std::string>& new_task,
                                 int episode, bool abl_causal_memory) {
  ChatRequest req;
  req.tag = kind;
  req.messages.push_back({"system", kMemSystem});
  std::string user;

  if (kind == PromptTag::MEM_ADAPT) {
    user += std::string(kAdaptIntro) + "\n\n";
    user += std::string(kAdaptTraceNotes) + "\n\n";
    user += std::string(kAdaptPrevNotes) + "\n\n";
    user += std::string(kAdaptGoal) + "\n\n";
    user += std::string(abl_causal_memory ? kFreeForms : kAdaptForms) + "\n\n";
    if (!prev.empty()) {
      user += "PREVIOUS LEARNINGS:\n";
      user += "TASK: " + task + "\n";
      user += "EPISODE: " + std::to_string(episode) + "\n";
      for (const MemorySnapshot& s : prev) {
        user += learnings_label(s) + "\n";
        user += s.numbered_text();
      }
      user += "\n";
    }
    user += current_trace_block(task, trace);
    user += "EVALUATION REPORT:\n";
    user += "REWARD_FINAL: " + std::to_string(trace.final_reward) +
            ". This means: " + reward_feedback + "\n\n";
    user += kSummaryAsk;
  } else if (kind == PromptTag::MEM_GEN_ENV || kind == PromptTag::MEM_GEN_TASK) {
    if (!new_task.has_value()) {
      throw MissingNewTask(std::string("render_memory_prompt(") +
                           to_string(kind) + "): new_task is required");
    }
    if (kind == PromptTag::MEM_GEN_ENV) {
      user += std::string(kGenEnvIntro) + "\n\n";
      user += std::string(kGenEnvTaskNote) + "\n\n";
      user += std::string(kGenEnvBestNote) + "\n\n";
      user += std::string(kGenEnvEvalNote) + "\n\n";
      user += std::string(kGenEnvGoal) + "\n\n";
    } else {
      user += std::string(kGenTaskIntro) + "\n\n";
      user += std::string(kGenTaskTaskNote) + "\n\n";
      user += std::string(kGenTaskBestNote) + "\n\n";
      user += std::string(kGenTaskEvalNote) + "\n\n";
      user += std::string(kGenTaskGoal) + "\n\n";
    }
    user += std::string(abl_causal_memory ? kFreeForms : kGenForms) + "\n\n";

    bool any_items = false;
    for (const MemorySnapshot& s : prev) any_items = any_items || !s.empty();
    if (prev.empty() || !any_items) {
      user += std::string("PREVIOUS LEARNINGS: ") + kNoLearnings + "\n\n";
    } else {
      user += "PREVIOUS LEARNINGS:\n";
      for (const MemorySnapshot& s : prev) {
        user += "TASK: " + s.task_description + "\n";
        user += "LEARNINGS:\n" + s.numbered_text();
        user += "EVALUATION REPORT:\n";
        user += "REWARD_FINAL: " + std::to_string(s.source_reward) +
                ". This means: " + reward_to_feedback(s.source_reward) + "\n\n";
      }
    }
    user += "NEW TASK: " + *new_task + "\n";
    user += kSummaryAsk;
  } else {
    throw InvalidConfig("render_memory_prompt: not a memory tag");
  }

  req.messages.push_back({"user", user});
  return req;
}

}  // namespace cama
