#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cama/backend.hpp"
#include "cama/episode.hpp"
#include "cama/world_config.hpp"

namespace cama {

class TraceWriter;

enum class GenKind { GEN_ENV, GEN_TASK };

// Observation recorded for the TASK_COMPLETE pseudo-step; the world is not
// stepped, so replay must special-case it the same way.
inline constexpr const char* kTaskCompleteObservation =
    "You declare the task complete.";

struct OrchestratorConfig {
  Hyper hyper;
  RunFlags flags;
  std::uint64_t seed = 0;
  std::string mode_label = "adapt";  // recorded in the episode ("g+a", ...)
};

// Adaptation: up to K trials of one (task, variant) pair. Each trial runs
// decide -> ground/refine -> step until the world ends the trial, the
// agent declares TASK_COMPLETE, or the response is unparseable twice in a
// row (the trial is then recorded as FAILED and the episode continues).
// After every trial - including the last - the memory generator is called
// with the window of the most recent snapshots, producing one snapshot
// per trial. The episode stops early after any trial scoring 100.
// `initial_memory` seeds trial 1 (the generalization meta-memory).
EpisodeRecord run_adaptation(
    Backend& backend, const Bundle& bundle,
    const std::optional<MemorySnapshot>& initial_memory = std::nullopt,
    const OrchestratorConfig& config = {}, TraceWriter* trace = nullptr);

// Generalization: selects the crucial memories of the past episodes
// (best-trial snapshot each, newest `archive_cap`), asks the memory
// generator for one meta-memory with the matching prompt, and runs
// adaptation seeded with it. Trial 1 of the returned record is the
// generalization-only attempt; the remaining trials adapt further.
// Throws NoEpisodes when `past` is empty.
EpisodeRecord run_generalization(GenKind kind, Backend& backend,
                                 const Bundle& bundle,
                                 const std::vector<EpisodeRecord>& past,
                                 const OrchestratorConfig& config = {},
                                 TraceWriter* trace = nullptr);

}  // namespace cama
