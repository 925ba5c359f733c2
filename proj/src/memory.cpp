#include "cama/memory.hpp"

#include <sstream>

#include "cama/episode.hpp"
#include "cama/errors.hpp"
#include "cama/text_util.hpp"

namespace cama {

std::string MemorySnapshot::numbered_text() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out << (i + 1) << ". " << items[i].text << "\n";
  }
  return out.str();
}

MemorySnapshot parse_memory(const std::string& body, ParseMode mode) {
  MemorySnapshot snap;
  for (const std::string& line : split_lines(body)) {
    if (trim_view(line).empty()) continue;
    try {
      CausalAbstraction a = parse_abstraction(line);
      std::string canonical = format_abstraction(a);
      snap.items.push_back(MemoryItem{std::move(a), std::move(canonical)});
    } catch (const MalformedAbstraction&) {
      if (mode == ParseMode::STRICT) throw;
      ++snap.dropped_lines;
    }
  }
  if (mode == ParseMode::STRICT && snap.items.empty()) {
    throw EmptyMemory("strict parse produced zero memory items");
  }
  return snap;
}

MemorySnapshot parse_memory_opaque(const std::string& body) {
  MemorySnapshot snap;
  for (const std::string& line : split_lines(body)) {
    std::string_view sentence = strip_list_marker(line);
    if (sentence.empty()) continue;
    snap.items.push_back(MemoryItem{std::nullopt, std::string(sentence)});
  }
  return snap;
}

std::vector<std::pair<MemorySnapshot, int>> select_crucial_memories(
    const std::vector<EpisodeRecord>& episodes, std::size_t archive_cap) {
  if (episodes.empty()) {
    throw NoEpisodes("select_crucial_memories: no episodes");
  }
  std::size_t first =
      episodes.size() > archive_cap ? episodes.size() - archive_cap : 0;
  std::vector<std::pair<MemorySnapshot, int>> out;
  out.reserve(episodes.size() - first);
  for (std::size_t e = first; e < episodes.size(); ++e) {
    const EpisodeRecord& ep = episodes[e];
    if (ep.trials.empty() || ep.snapshots.size() != ep.trials.size()) {
      throw NoEpisodes("episode " + ep.task_id +
                       " has no aligned trial/snapshot pair");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < ep.trials.size(); ++i) {
      if (ep.trials[i].final_reward > ep.trials[best].final_reward) best = i;
    }
    MemorySnapshot pick = ep.snapshots[best];
    pick.task_description = ep.task_description;
    out.emplace_back(std::move(pick), ep.trials[best].final_reward);
  }
  return out;
}

const char* to_string(SnapshotKind k) {
  return k == SnapshotKind::TRIAL ? "trial" : "meta";
}

}  // namespace cama
