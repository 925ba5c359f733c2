#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cama/abstraction.hpp"

namespace cama {

struct EpisodeRecord;  // episode.hpp

enum class SnapshotKind { TRIAL, META };
enum class ParseMode { STRICT, LENIENT };

// One memory entry. `parsed` is empty when the run stores opaque free-form
// lines (causal-memory ablation); `text` is always the line as persisted.
struct MemoryItem {
  std::optional<CausalAbstraction> parsed;
  std::string text;
};

// Provenance for one archive entry a META snapshot was built from.
struct ArchiveEntry {
  std::string task_description;
  int reward = 0;
  std::vector<std::string> items;
};

// Memory S_k produced after trial k (or a META memory synthesized from an
// archive of crucial memories). Item ids are implicit 1-based positions.
struct MemorySnapshot {
  std::vector<MemoryItem> items;
  int source_trial = 0;   // 0-based; -1 for META
  int source_reward = 0;  // 0..100
  SnapshotKind kind = SnapshotKind::TRIAL;
  // Set when the snapshot is placed into a generalization archive; used to
  // label its LEARNINGS block in the meta-memory prompt.
  std::string task_description;
  // META only: the (memory, reward) archive the snapshot was built from.
  std::vector<ArchiveEntry> archive;
  // Lines discarded by LENIENT parsing of the generator output.
  int dropped_lines = 0;

  bool empty() const { return items.empty(); }
  std::size_t size() const { return items.size(); }
  // Canonical numbered-list rendering ("1. <canonical sentence>").
  std::string numbered_text() const;
};

// Parses a generator completion into a snapshot. Every non-empty line is
// stripped of its list marker and parsed as a causal abstraction. STRICT
// propagates the first MalformedAbstraction and requires at least one item
// (else EmptyMemory); LENIENT drops malformed lines and counts them.
MemorySnapshot parse_memory(const std::string& body,
                            ParseMode mode = ParseMode::LENIENT);

// Ablation ingestion: every non-empty line is kept verbatim as an opaque
// item (list marker stripped, no structured parse).
MemorySnapshot parse_memory_opaque(const std::string& body);

// For each episode picks the snapshot of its best trial (maximum final
// reward, earliest trial index on ties) and returns the picks for the
// `archive_cap` most recent episodes, oldest first, paired with the trial
// reward. Throws NoEpisodes when `episodes` is empty.
std::vector<std::pair<MemorySnapshot, int>> select_crucial_memories(
    const std::vector<EpisodeRecord>& episodes, std::size_t archive_cap = 10);

const char* to_string(SnapshotKind k);

}  // namespace cama
