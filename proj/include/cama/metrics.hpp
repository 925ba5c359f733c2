#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cama/episode.hpp"

namespace cama {

// One line of the metrics table: a single task, or one of the aggregate
// rows "S", "L", "All".
struct MetricsRow {
  std::string label;   // task_id or aggregate name
  std::string length;  // "S" | "L" for task rows, "-" for aggregates
  bool aggregate = false;
  int episodes = 0;

  double base = 0.0;               // mean trial-0 reward
  double best = 0.0;               // mean best-trial reward
  double trials_to_success = 0.0;  // mean count to the first 100, else K
  double improved_pct = 0.0;       // % episodes with a trial above trial-0
  double norm_steps = 0.0;         // mean steps/max_steps over all trials
  // Mean reward per trial index; an episode that stopped early keeps
  // contributing its final reward to later indices.
  std::vector<double> curve;
};

struct MetricsReport {
  std::vector<MetricsRow> rows;  // tasks sorted by id, then S, L, All
};

// Aggregates episode records into per-task and per-length rows. The "All"
// row is always present; "S"/"L" appear when a task of that length exists.
// Throws EmptyInput on an empty record list.
MetricsReport compute_metrics(const std::vector<EpisodeRecord>& records);

// Per-label difference of mean best-trial scores, ablation - main, for
// every label the two reports share (in `main` row order).
std::vector<std::pair<std::string, double>> metrics_delta(
    const MetricsReport& main, const MetricsReport& ablation);

// Tab-separated table with a header line; one row per MetricsRow, the
// score curve as a comma-joined final column.
std::string render_metrics_tsv(const MetricsReport& report);

}  // namespace cama
