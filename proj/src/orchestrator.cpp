#include "cama/orchestrator.hpp"

#include <algorithm>

#include "cama/agent.hpp"
#include "cama/errors.hpp"
#include "cama/feedback.hpp"
#include "cama/grounding.hpp"
#include "cama/prompts.hpp"
#include "cama/trace.hpp"
#include "cama/world.hpp"

namespace cama {
namespace {

constexpr const char* kAmbiguousPrefix = "Ambiguous request";

// One trial: decide -> ground/refine -> step until done. Specials bypass
// grounding; a candidate that cannot be grounded within max_tries is
// recorded as a no-op "refine_failure" step and the trial continues. Two
// consecutive unparseable completions abort the trial as FAILED.
TrialTrace run_trial(Agent& agent, World& world, const std::string& task,
                     const MemorySnapshot* memory, const Hyper& hyper,
                     int trial_index, TraceWriter* out) {
  TrialTrace trace;
  trace.initial_observation = world.initial_observation();
  bool after_ambiguous = false;

  while (!world.done()) {
    TrialStep step;
    StepResult result;
    bool declared_complete = false;
    try {
      AgentDecision d = agent.decide(task, memory, trace, world.admissible(),
                                     {}, after_ambiguous);
      std::vector<std::string> rejected;
      for (int attempt = 1;; ++attempt) {
        if (d.special != SpecialAction::NONE) {
          step.rationale = d.rationale;
          step.used_ids = d.used_learning_ids;
          switch (d.special) {
            case SpecialAction::TASK_COMPLETE:
              step.action = "TASK_COMPLETE";
              step.special = "task_complete";
              step.observation = kTaskCompleteObservation;
              step.score = world.score();
              declared_complete = true;
              break;
            case SpecialAction::WAIT:
              step.action = "wait";
              step.special = "wait";
              result = world.step(step.action);
              break;
            case SpecialAction::FOCUS:
              step.action = "focus on " + d.focus_object;
              step.special = "focus";
              result = world.step(step.action);
              break;
            default:  // AMBIGUITY_CHOICE
              step.action = std::to_string(d.ambiguity_choice);
              step.special = "ambiguity_choice";
              result = world.step(step.action);
              break;
          }
          break;
        }
        GroundResult g =
            ground(d.candidate_action, world.admissible(), hyper.threshold);
        if (std::holds_alternative<std::string>(g)) {
          step.rationale = d.rationale;
          step.used_ids = d.used_learning_ids;
          step.action = std::get<std::string>(g);
          result = world.step(step.action);
          break;
        }
        rejected.push_back(d.candidate_action);
        if (attempt == hyper.max_tries) {
          step.rationale = d.rationale;
          step.used_ids = d.used_learning_ids;
          step.action = d.candidate_action;
          step.special = "refine_failure";
          result = world.step_unknown();
          break;
        }
        d = agent.decide(task, memory, trace, world.admissible(), rejected,
                         after_ambiguous);
      }
    } catch (const UnparseableResponse&) {
      trace.terminal = TerminalReason::FAILED;
      trace.final_reward = world.score();
      return trace;
    }

    if (!declared_complete) {
      step.observation = result.observation;
      step.score = result.score;
    }
    trace.steps.push_back(step);
    if (out)
      out->step(trial_index, static_cast<int>(trace.steps.size()) - 1, step);

    if (declared_complete) {
      trace.terminal = TerminalReason::COMPLETE;
      trace.final_reward = world.score();
      return trace;
    }
    after_ambiguous = result.observation.rfind(kAmbiguousPrefix, 0) == 0;
    if (result.done) {
      trace.terminal = result.terminal_reason;
      trace.final_reward = result.score;
      return trace;
    }
  }
  trace.terminal = world.terminal();
  trace.final_reward = world.score();
  return trace;
}

}  // namespace

EpisodeRecord run_adaptation(Backend& backend, const Bundle& bundle,
                             const std::optional<MemorySnapshot>& initial_memory,
                             const OrchestratorConfig& config,
                             TraceWriter* trace) {
  validate_bundle(bundle);

  EpisodeRecord rec;
  rec.task_id = bundle.task.task_id;
  rec.task_description = bundle.task.description;
  rec.family = bundle.task.family;
  rec.length = bundle.task.length;
  rec.variant_id = bundle.world.variant_id;
  rec.seed = config.seed;
  rec.backend_id = backend.id();
  rec.mode = config.mode_label;
  rec.flags = config.flags;
  rec.bundle = bundle;
  if (initial_memory) {
    rec.meta = initial_memory;
    rec.dropped_lines += initial_memory->dropped_lines;
  }
  if (trace) trace->episode_meta(rec);

  AgentConfig agent_config;
  agent_config.abl_controller = config.flags.abl_controller;
  agent_config.limits.token_budget = config.hyper.token_budget;
  Agent agent(backend, agent_config);

  std::vector<MemorySnapshot> pool;
  if (initial_memory) pool.push_back(*initial_memory);

  for (int k = 0; k < config.hyper.k; ++k) {
    const MemorySnapshot* memory = pool.empty() ? nullptr : &pool.back();
    World world(bundle);
    TrialTrace trial = run_trial(agent, world, bundle.task.description, memory,
                                 config.hyper, k, trace);
    if (trace) trace->trial_end(k, trial);
    rec.trials.push_back(trial);

    std::size_t window = std::min(
        pool.size(), static_cast<std::size_t>(config.hyper.window));
    std::vector<MemorySnapshot> prev(pool.end() - window, pool.end());
    ChatRequest request = render_memory_prompt(
        PromptTag::MEM_ADAPT, bundle.task.description, trial, prev,
        reward_to_feedback(trial.final_reward), std::nullopt, k,
        config.flags.abl_causal_memory);
    std::string completion = backend.complete(request);
    MemorySnapshot snap = config.flags.abl_causal_memory
                              ? parse_memory_opaque(completion)
                              : parse_memory(completion, config.hyper.parse_mode);
    snap.kind = SnapshotKind::TRIAL;
    snap.source_trial = k;
    snap.source_reward = trial.final_reward;
    rec.dropped_lines += snap.dropped_lines;
    rec.snapshots.push_back(snap);
    pool.push_back(snap);
    if (trace) trace->snapshot(k, rec.snapshots.back());

    if (trial.final_reward == 100) break;
  }

  rec.dropped_ids = agent.dropped_id_total();
  rec.content_hash = episode_content_hash(rec);
  if (trace) trace->episode_end(rec);
  return rec;
}

EpisodeRecord run_generalization(GenKind kind, Backend& backend,
                                 const Bundle& bundle,
                                 const std::vector<EpisodeRecord>& past,
                                 const OrchestratorConfig& config,
                                 TraceWriter* trace) {
  if (past.empty()) {
    throw NoEpisodes("run_generalization: past episodes required");
  }
  auto archive = select_crucial_memories(
      past, static_cast<std::size_t>(config.hyper.archive_cap));

  std::vector<MemorySnapshot> prev;
  std::vector<ArchiveEntry> entries;
  int best_reward = 0;
  for (const auto& [snapshot, reward] : archive) {
    MemorySnapshot labeled = snapshot;
    labeled.source_reward = reward;
    ArchiveEntry entry;
    entry.task_description = labeled.task_description;
    entry.reward = reward;
    for (const MemoryItem& item : labeled.items) entry.items.push_back(item.text);
    entries.push_back(std::move(entry));
    prev.push_back(std::move(labeled));
    best_reward = std::max(best_reward, reward);
  }

  PromptTag tag = kind == GenKind::GEN_ENV ? PromptTag::MEM_GEN_ENV
                                           : PromptTag::MEM_GEN_TASK;
  ChatRequest request = render_memory_prompt(
      tag, bundle.task.description, TrialTrace{}, prev, "",
      bundle.task.description, 0, config.flags.abl_causal_memory);
  std::string completion = backend.complete(request);
  MemorySnapshot meta = config.flags.abl_causal_memory
                            ? parse_memory_opaque(completion)
                            : parse_memory(completion, config.hyper.parse_mode);
  meta.kind = SnapshotKind::META;
  meta.source_trial = -1;
  meta.source_reward = best_reward;
  meta.task_description = bundle.task.description;
  meta.archive = std::move(entries);

  OrchestratorConfig sub = config;
  if (sub.mode_label == "adapt") {
    sub.mode_label = kind == GenKind::GEN_ENV ? "gen-env" : "gen-task";
  }
  return run_adaptation(backend, bundle, meta, sub, trace);
}

}  // namespace cama
