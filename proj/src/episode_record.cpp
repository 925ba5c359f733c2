#include "cama/episode.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "cama/errors.hpp"
#include "cama/fnv.hpp"

namespace cama {

namespace fs = std::filesystem;
using nlohmann::json;

int EpisodeRecord::best_reward() const {
  int best = 0;
  for (const TrialTrace& t : trials) best = std::max(best, t.final_reward);
  return best;
}

int EpisodeRecord::trial0_reward() const {
  return trials.empty() ? 0 : trials.front().final_reward;
}

const char* to_string(TerminalReason r) {
  switch (r) {
    case TerminalReason::RUNNING: return "running";
    case TerminalReason::COMPLETE: return "complete";
    case TerminalReason::FAILED_FOCUS: return "failed_focus";
    case TerminalReason::TIMEOUT: return "timeout";
    case TerminalReason::FAILED: return "failed";
  }
  return "running";
}

TerminalReason terminal_reason_from_string(const std::string& s) {
  if (s == "complete") return TerminalReason::COMPLETE;
  if (s == "failed_focus") return TerminalReason::FAILED_FOCUS;
  if (s == "timeout") return TerminalReason::TIMEOUT;
  if (s == "failed") return TerminalReason::FAILED;
  return TerminalReason::RUNNING;
}

void to_json(json& j, const MemoryItem& m) {
  j = json{{"text", m.text}, {"structured", m.parsed.has_value()}};
}

void from_json(const json& j, MemoryItem& m) {
  m.text = j.at("text").get<std::string>();
  bool structured = j.value("structured", false);
  if (structured) {
    m.parsed = parse_abstraction(m.text);
  } else {
    m.parsed.reset();
  }
}

void to_json(json& j, const ArchiveEntry& a) {
  j = json{{"task_description", a.task_description},
           {"reward", a.reward},
           {"items", a.items}};
}

void from_json(const json& j, ArchiveEntry& a) {
  a.task_description = j.at("task_description").get<std::string>();
  a.reward = j.at("reward").get<int>();
  a.items = j.at("items").get<std::vector<std::string>>();
}

void to_json(json& j, const MemorySnapshot& s) {
  j = json{{"items", s.items},
           {"source_trial", s.source_trial},
           {"source_reward", s.source_reward},
           {"kind", to_string(s.kind)},
           {"dropped_lines", s.dropped_lines}};
  if (!s.task_description.empty()) j["task_description"] = s.task_description;
  if (!s.archive.empty()) j["archive"] = s.archive;
}

void from_json(const json& j, MemorySnapshot& s) {
  s.items = j.at("items").get<std::vector<MemoryItem>>();
  s.source_trial = j.at("source_trial").get<int>();
  s.source_reward = j.at("source_reward").get<int>();
  s.kind = j.at("kind").get<std::string>() == "meta" ? SnapshotKind::META
                                                     : SnapshotKind::TRIAL;
  s.dropped_lines = j.value("dropped_lines", 0);
  s.task_description = j.value("task_description", std::string());
  if (j.contains("archive")) {
    s.archive = j.at("archive").get<std::vector<ArchiveEntry>>();
  }
}

void to_json(json& j, const TrialStep& s) {
  j = json{{"rationale", s.rationale},
           {"action", s.action},
           {"observation", s.observation},
           {"score", s.score},
           {"special", s.special},
           {"used_ids", s.used_ids}};
}

void from_json(const json& j, TrialStep& s) {
  s.rationale = j.at("rationale").get<std::string>();
  s.action = j.at("action").get<std::string>();
  s.observation = j.at("observation").get<std::string>();
  s.score = j.at("score").get<int>();
  s.special = j.value("special", std::string());
  s.used_ids = j.value("used_ids", std::vector<int>());
}

void to_json(json& j, const TrialTrace& t) {
  j = json{{"initial_observation", t.initial_observation},
           {"steps", t.steps},
           {"final_reward", t.final_reward},
           {"terminal", to_string(t.terminal)}};
}

void from_json(const json& j, TrialTrace& t) {
  t.initial_observation = j.at("initial_observation").get<std::string>();
  t.steps = j.at("steps").get<std::vector<TrialStep>>();
  t.final_reward = j.at("final_reward").get<int>();
  t.terminal = terminal_reason_from_string(j.at("terminal").get<std::string>());
}

void to_json(json& j, const RunFlags& f) {
  j = json{{"abl_causal_memory", f.abl_causal_memory},
           {"abl_controller", f.abl_controller}};
}

void from_json(const json& j, RunFlags& f) {
  f.abl_causal_memory = j.value("abl_causal_memory", false);
  f.abl_controller = j.value("abl_controller", false);
}

void to_json(json& j, const EpisodeRecord& r) {
  j = json{{"task_id", r.task_id},
           {"task_description", r.task_description},
           {"family", r.family},
           {"length", r.length},
           {"variant_id", r.variant_id},
           {"seed", r.seed},
           {"backend_id", r.backend_id},
           {"mode", r.mode},
           {"flags", r.flags},
           {"trials", r.trials},
           {"snapshots", r.snapshots},
           {"dropped_lines", r.dropped_lines},
           {"dropped_ids", r.dropped_ids},
           {"content_hash", r.content_hash},
           {"bundle", r.bundle}};
  if (r.meta) j["meta"] = *r.meta;
}

void from_json(const json& j, EpisodeRecord& r) {
  r.task_id = j.at("task_id").get<std::string>();
  r.task_description = j.at("task_description").get<std::string>();
  r.family = j.value("family", std::string());
  r.length = j.value("length", std::string("S"));
  r.variant_id = j.value("variant_id", 0);
  r.seed = j.value("seed", std::uint64_t{0});
  r.backend_id = j.value("backend_id", std::string());
  r.mode = j.value("mode", std::string("adapt"));
  r.flags = j.value("flags", RunFlags{});
  r.trials = j.at("trials").get<std::vector<TrialTrace>>();
  r.snapshots = j.at("snapshots").get<std::vector<MemorySnapshot>>();
  if (j.contains("meta")) r.meta = j.at("meta").get<MemorySnapshot>();
  r.dropped_lines = j.value("dropped_lines", 0);
  r.dropped_ids = j.value("dropped_ids", 0);
  r.content_hash = j.value("content_hash", std::uint64_t{0});
  r.bundle = j.at("bundle").get<Bundle>();
}

std::uint64_t episode_content_hash(const EpisodeRecord& r) {
  json j{{"trials", r.trials}, {"snapshots", r.snapshots}};
  return fnv1a64(j.dump());
}

EpisodeRecord load_record(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TraceIoError("cannot open record file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw TraceIoError("cannot parse record file " + path + ": " + e.what());
  }
  try {
    return j.get<EpisodeRecord>();
  } catch (const json::exception& e) {
    throw TraceIoError("record file " + path + " is malformed: " + e.what());
  }
}

void save_record(const EpisodeRecord& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw TraceIoError("cannot write record file: " + path);
  out << json(r).dump(2) << "\n";
}

std::vector<EpisodeRecord> load_record_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    throw TraceIoError("record directory does not exist: " + dir);
  }
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<EpisodeRecord> records;
  records.reserve(files.size());
  for (const std::string& f : files) records.push_back(load_record(f));
  return records;
}

}  // namespace cama
