#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cama/episode.hpp"

namespace cama {

// Everything one `run` invocation needs. Loaded from a JSON file and/or
// assembled from command-line options; validated before use.
struct RunConfig {
  std::string mode = "adapt";  // adapt | gen-env | gen-task | g+a | ablation
  std::string backend;         // "script:<path>" | "live" | "live:<model>"
  std::string world_file;      // bundle JSON ({"world":..., "task":...})
  std::vector<std::string> past_dirs;  // record dirs seeding gen modes
  Hyper hyper;
  int tau_max = 0;  // when > 0, overrides the task's max_steps
  std::optional<std::uint64_t> seed;
  int variants = 1;  // environment variants to run (episode per variant)
  int jobs = 1;      // concurrent episode runners
  std::string out_dir = "out";
  RunFlags flags;
  std::string endpoint;  // live backend URL; default from the backend config
};

// Parses a config object; `source` labels error messages. Unknown fields
// and type mismatches raise InvalidConfig with the offending field path
// (e.g. "hyper.k: must be a positive integer").
RunConfig parse_run_config(const nlohmann::json& j, const std::string& source);
RunConfig load_run_config(const std::string& path);

// Cross-field rules: known mode, backend shape, positive hyperparameters,
// past dirs for generalization modes, a seed whenever variants are
// generated, at least one ablation flag in ablation mode.
void validate_run_config(const RunConfig& config);

// Re-simulates a recorded episode against its embedded bundle and verifies
// every observation and score byte-for-byte, then the stored content hash.
// Throws DivergenceAt (step index counted across the episode's trials) on
// the first mismatch.
void replay_trace(const EpisodeRecord& record);

// Subcommand bodies. Each reports human-readable progress on `out` and
// failures on `err`, returning the process exit status.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_replay(const std::string& trace_path, std::ostream& out,
               std::ostream& err);
int cmd_metrics(const std::vector<std::string>& record_dirs, std::ostream& out,
                std::ostream& err);
int cmd_validate_config(const std::string& config_path, std::ostream& out,
                        std::ostream& err);
int cmd_gen_variants(const std::string& world_file, int n, std::uint64_t seed,
                     const std::string& out_dir, std::ostream& out,
                     std::ostream& err);

}  // namespace cama
