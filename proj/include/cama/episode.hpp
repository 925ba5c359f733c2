#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cama/memory.hpp"
#include "cama/trial.hpp"
#include "cama/world_config.hpp"

namespace cama {

struct RunFlags {
  bool abl_causal_memory = false;
  bool abl_controller = false;
};

// Algorithm hyperparameters, one place for all modules.
struct Hyper {
  int k = 5;               // trials per episode
  int window = 3;          // previous snapshots shown to the memory generator
  int archive_cap = 10;    // crucial-memory archive size
  double threshold = 0.9;  // grounding similarity gate
  int max_tries = 5;       // refinement attempts
  int token_budget = 32768;
  ParseMode parse_mode = ParseMode::LENIENT;
};

// Up to K trials of one (task, environment-variant) pair, with the memory
// snapshot generated after every trial.
struct EpisodeRecord {
  std::string task_id;
  std::string task_description;
  std::string family;
  std::string length = "S";
  int variant_id = 0;
  std::uint64_t seed = 0;
  std::string backend_id;
  std::string mode = "adapt";  // adapt | gen-env | gen-task | g+a
  RunFlags flags;

  std::vector<TrialTrace> trials;
  std::vector<MemorySnapshot> snapshots;  // aligned: snapshots[i] from trials[i]
  std::optional<MemorySnapshot> meta;     // generalization seed, when any

  int dropped_lines = 0;  // memory lines discarded by LENIENT parsing
  int dropped_ids = 0;    // learning ids referencing nonexistent items
  std::uint64_t content_hash = 0;

  Bundle bundle;  // embedded world/task for self-contained replay

  int best_reward() const;
  int trial0_reward() const;
};

void to_json(nlohmann::json& j, const MemoryItem& m);
void from_json(const nlohmann::json& j, MemoryItem& m);
void to_json(nlohmann::json& j, const ArchiveEntry& a);
void from_json(const nlohmann::json& j, ArchiveEntry& a);
void to_json(nlohmann::json& j, const MemorySnapshot& s);
void from_json(const nlohmann::json& j, MemorySnapshot& s);
void to_json(nlohmann::json& j, const TrialStep& s);
void from_json(const nlohmann::json& j, TrialStep& s);
void to_json(nlohmann::json& j, const TrialTrace& t);
void from_json(const nlohmann::json& j, TrialTrace& t);
void to_json(nlohmann::json& j, const RunFlags& f);
void from_json(const nlohmann::json& j, RunFlags& f);
void to_json(nlohmann::json& j, const EpisodeRecord& r);
void from_json(const nlohmann::json& j, EpisodeRecord& r);

// FNV-1a 64 over the canonical JSON of trials + snapshots. Timestamps and
// run metadata are excluded, so replays of the same script hash equal.
std::uint64_t episode_content_hash(const EpisodeRecord& r);

// Reads/writes one episode record as a JSON file.
EpisodeRecord load_record(const std::string& path);
void save_record(const EpisodeRecord& r, const std::string& path);
// Loads every *.json record in a directory, sorted by file name.
std::vector<EpisodeRecord> load_record_dir(const std::string& dir);

}  // namespace cama
