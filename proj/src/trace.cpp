#include "cama/trace.hpp"

#include <chrono>
#include <fstream>

#include "cama/errors.hpp"
#include "cama/text_util.hpp"

namespace cama {
namespace {

std::int64_t now_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

void TraceWriter::write(nlohmann::json j) {
  j["ts"] = now_ms();
  (*out_) << j.dump() << "\n";
  out_->flush();
}

void TraceWriter::episode_meta(const EpisodeRecord& r) {
  nlohmann::json j{{"type", "episode_meta"},
                   {"task_id", r.task_id},
                   {"task_description", r.task_description},
                   {"family", r.family},
                   {"length", r.length},
                   {"variant_id", r.variant_id},
                   {"seed", r.seed},
                   {"backend_id", r.backend_id},
                   {"mode", r.mode},
                   {"flags", r.flags},
                   {"bundle",
                    {{"world", r.bundle.world}, {"task", r.bundle.task}}}};
  if (r.meta) j["meta"] = *r.meta;
  write(std::move(j));
}

void TraceWriter::step(int trial, int index, const TrialStep& s) {
  nlohmann::json j = s;
  j["type"] = "step";
  j["trial"] = trial;
  j["index"] = index;
  write(std::move(j));
}

void TraceWriter::trial_end(int trial, const TrialTrace& t) {
  write(nlohmann::json{{"type", "trial_end"},
                       {"trial", trial},
                       {"initial_observation", t.initial_observation},
                       {"final_reward", t.final_reward},
                       {"terminal", to_string(t.terminal)}});
}

void TraceWriter::snapshot(int trial, const MemorySnapshot& s) {
  write(nlohmann::json{{"type", "snapshot"}, {"trial", trial},
                       {"snapshot", s}});
}

void TraceWriter::episode_end(const EpisodeRecord& r) {
  nlohmann::json rewards = nlohmann::json::array();
  for (const TrialTrace& t : r.trials) rewards.push_back(t.final_reward);
  write(nlohmann::json{{"type", "episode_end"},
                       {"content_hash", r.content_hash},
                       {"dropped_lines", r.dropped_lines},
                       {"dropped_ids", r.dropped_ids},
                       {"rewards", std::move(rewards)}});
}

EpisodeRecord read_trace(std::istream& in, const std::string& source) {
  EpisodeRecord rec;
  bool have_meta = false;
  std::string line;
  int line_no = 0;

  auto fail = [&](const std::string& why) {
    throw TraceIoError(source + ":" + std::to_string(line_no) + ": " + why);
  };
  auto trial_at = [&](std::size_t t) -> TrialTrace& {
    while (rec.trials.size() <= t) rec.trials.emplace_back();
    return rec.trials[t];
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) fail("invalid JSON");
    const std::string type = j.value("type", "");
    try {
      if (type == "episode_meta") {
        if (have_meta) fail("duplicate episode_meta record");
        rec.task_id = j.at("task_id").get<std::string>();
        rec.task_description = j.at("task_description").get<std::string>();
        rec.family = j.value("family", "");
        rec.length = j.value("length", "S");
        rec.variant_id = j.value("variant_id", 0);
        rec.seed = j.value("seed", std::uint64_t{0});
        rec.backend_id = j.value("backend_id", "");
        rec.mode = j.value("mode", "adapt");
        rec.flags = j.value("flags", RunFlags{});
        rec.bundle.world = j.at("bundle").at("world").get<WorldConfig>();
        rec.bundle.task = j.at("bundle").at("task").get<TaskSpec>();
        if (j.contains("meta")) rec.meta = j.at("meta").get<MemorySnapshot>();
        have_meta = true;
      } else if (type == "step") {
        trial_at(j.at("trial").get<std::size_t>())
            .steps.push_back(j.get<TrialStep>());
      } else if (type == "trial_end") {
        TrialTrace& t = trial_at(j.at("trial").get<std::size_t>());
        t.initial_observation = j.at("initial_observation").get<std::string>();
        t.final_reward = j.at("final_reward").get<int>();
        t.terminal =
            terminal_reason_from_string(j.at("terminal").get<std::string>());
      } else if (type == "snapshot") {
        rec.snapshots.push_back(j.at("snapshot").get<MemorySnapshot>());
      } else if (type == "episode_end") {
        rec.content_hash = j.at("content_hash").get<std::uint64_t>();
        rec.dropped_lines = j.value("dropped_lines", 0);
        rec.dropped_ids = j.value("dropped_ids", 0);
      } else {
        fail("unknown record type '" + type + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      fail(std::string("bad ") + (type.empty() ? "record" : type) + ": " +
           e.what());
    }
  }
  if (!have_meta) {
    throw TraceIoError(source + ": missing episode_meta record");
  }
  return rec;
}

EpisodeRecord read_trace_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw TraceIoError("cannot open trace file " + path);
  return read_trace(in, path);
}

}  // namespace cama
