#include "cama/agent.hpp"

#include <cstdlib>

#include "cama/errors.hpp"
#include "cama/text_util.hpp"

namespace cama {

namespace {

constexpr const char* kIdsMarker = "I used learning id(s):";
constexpr const char* kRationaleMarker = "$$$";
constexpr const char* kActionMarker = "###";

// "TASK_COMPLETE." and "Wait" count; specials tolerate case and one
// trailing period, candidates with special == NONE stay verbatim.
std::string special_key(std::string_view action) {
  std::string key = trim(action);
  if (!key.empty() && key.back() == '.') key.pop_back();
  return to_lower(trim(key));
}

// Parses "1, 3" into ids; malformed tokens are counted, never fatal.
void parse_id_list(std::string_view text, std::vector<int>* ids,
                   int* dropped) {
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view token = comma == std::string_view::npos
                                 ? text.substr(start)
                                 : text.substr(start, comma - start);
    token = trim_view(token);
    if (!token.empty()) {
      if (is_bare_integer(token)) {
        ids->push_back(std::atoi(std::string(token).c_str()));
      } else {
        ++*dropped;
      }
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
}

}  // namespace

const char* to_string(SpecialAction s) {
  switch (s) {
    case SpecialAction::NONE: return "none";
    case SpecialAction::TASK_COMPLETE: return "task_complete";
    case SpecialAction::FOCUS: return "focus";
    case SpecialAction::WAIT: return "wait";
    case SpecialAction::AMBIGUITY_CHOICE: return "ambiguity_choice";
  }
  return "none";
}

AgentDecision parse_decision(const std::string& completion,
                             bool after_ambiguous) {
  AgentDecision d;

  const std::string bare = trim(completion);
  if (after_ambiguous && is_bare_integer(bare)) {
    d.special = SpecialAction::AMBIGUITY_CHOICE;
    d.ambiguity_choice = std::atoi(bare.c_str());
    d.candidate_action = bare;
    return d;
  }

  const std::size_t action_at = completion.find(kActionMarker);
  if (action_at == std::string::npos) {
    throw UnparseableResponse(
        "completion lacks the \"###\" action marker: " + bare);
  }
  const std::string action = trim(completion.substr(action_at + 3));
  if (action.empty()) {
    throw UnparseableResponse("completion has an empty action after \"###\"");
  }

  const std::string head = completion.substr(0, action_at);
  const std::size_t rationale_at = head.find(kRationaleMarker);
  if (rationale_at != std::string::npos) {
    d.rationale = trim(head.substr(rationale_at + 3));
  }
  const std::size_t ids_at = head.find(kIdsMarker);
  if (ids_at != std::string::npos) {
    const std::size_t ids_start = ids_at + std::string(kIdsMarker).size();
    const std::size_t ids_end =
        rationale_at != std::string::npos && rationale_at >= ids_start
            ? rationale_at
            : head.size();
    parse_id_list(std::string_view(head).substr(ids_start, ids_end - ids_start),
                  &d.used_learning_ids, &d.dropped_ids);
  }

  d.candidate_action = action;
  const std::string key = special_key(action);
  if (after_ambiguous && is_bare_integer(key)) {
    d.special = SpecialAction::AMBIGUITY_CHOICE;
    d.ambiguity_choice = std::atoi(key.c_str());
  } else if (key == "task_complete") {
    d.special = SpecialAction::TASK_COMPLETE;
  } else if (key == "wait") {
    d.special = SpecialAction::WAIT;
  } else if (key == "focus on" || key == "focus") {
    throw UnparseableResponse("FOCUS ON without an object");
  } else if (key.rfind("focus on ", 0) == 0) {
    d.special = SpecialAction::FOCUS;
    // The prefix match guarantees the first 9 chars spell "FOCUS ON "
    // (any case), so the object is everything after them.
    std::string object = trim(action.substr(9));
    if (!object.empty() && object.back() == '.') object.pop_back();
    // Models sometimes keep the prompt's angle brackets.
    if (object.size() >= 2 && object.front() == '<' && object.back() == '>') {
      object = trim(object.substr(1, object.size() - 2));
    }
    d.focus_object = object;
    if (d.focus_object.empty()) {
      throw UnparseableResponse("FOCUS ON without an object");
    }
  }
  return d;
}

Agent::Agent(Backend& backend, AgentConfig config)
    : backend_(&backend), config_(std::move(config)) {}

AgentDecision Agent::decide(const std::string& task,
                            const MemorySnapshot* memory,
                            const TrialTrace& trace, const ActionSpace& space,
                            const std::vector<std::string>& refinement_feedback,
                            bool after_ambiguous) {
  const ChatRequest req = render_action_prompt(
      task, space.objects, space.templates, memory, trace,
      refinement_feedback, config_.abl_controller, config_.limits);

  AgentDecision d;
  try {
    d = parse_decision(backend_->complete(req), after_ambiguous);
  } catch (const UnparseableResponse&) {
    ChatRequest retry = req;
    retry.messages.back().content +=
        "\n\nYour previous response was not in the expected format. " +
        std::string(config_.abl_controller
                        ? "Write ### followed by the single next action you "
                          "would like to take."
                        : "Write 'I used learning id(s):' as a comma "
                          "separated list; the list can be empty if no "
                          "learnings selected. Then, write $$$ followed by "
                          "the rationale. Finally, write ### followed by the "
                          "single next action you would like to take.");
    d = parse_decision(backend_->complete(retry), after_ambiguous);
  }

  const int n = memory == nullptr ? 0 : static_cast<int>(memory->size());
  std::vector<int> valid;
  for (int id : d.used_learning_ids) {
    if (id >= 1 && id <= n) {
      valid.push_back(id);
    } else {
      ++d.dropped_ids;
    }
  }
  d.used_learning_ids = std::move(valid);
  dropped_id_total_ += d.dropped_ids;
  return d;
}

}  // namespace cama
