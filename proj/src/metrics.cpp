#include "cama/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "cama/errors.hpp"

namespace cama {
namespace {

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

// Trial index of the first full score, 1-based; the trial count when the
// episode never reached 100.
int trials_to_success(const EpisodeRecord& r) {
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    if (r.trials[i].final_reward == 100) return static_cast<int>(i) + 1;
  }
  return static_cast<int>(r.trials.size());
}

bool improved_over_trial0(const EpisodeRecord& r) {
  for (std::size_t i = 1; i < r.trials.size(); ++i) {
    if (r.trials[i].final_reward > r.trial0_reward()) return true;
  }
  return false;
}

MetricsRow make_row(const std::string& label, const std::string& length,
                    bool aggregate,
                    const std::vector<const EpisodeRecord*>& records) {
  MetricsRow row;
  row.label = label;
  row.length = length;
  row.aggregate = aggregate;
  row.episodes = static_cast<int>(records.size());

  std::vector<double> base, best, tts, norm;
  std::size_t max_trials = 0;
  int improved = 0;
  for (const EpisodeRecord* r : records) {
    base.push_back(r->trial0_reward());
    best.push_back(r->best_reward());
    tts.push_back(trials_to_success(*r));
    if (improved_over_trial0(*r)) ++improved;
    max_trials = std::max(max_trials, r->trials.size());
    const int tau_max = std::max(1, r->bundle.task.max_steps);
    for (const TrialTrace& t : r->trials) {
      norm.push_back(static_cast<double>(t.steps.size()) / tau_max);
    }
  }
  row.base = mean(base);
  row.best = mean(best);
  row.trials_to_success = mean(tts);
  row.improved_pct =
      records.empty() ? 0.0 : 100.0 * improved / static_cast<double>(records.size());
  row.norm_steps = mean(norm);

  for (std::size_t k = 0; k < max_trials; ++k) {
    double sum = 0.0;
    for (const EpisodeRecord* r : records) {
      // Early-stopped episodes keep contributing their final reward.
      const std::size_t i = std::min(k, r->trials.size() - 1);
      sum += r->trials[i].final_reward;
    }
    row.curve.push_back(sum / static_cast<double>(records.size()));
  }
  return row;
}

std::string format_number(double x) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << x;
  return out.str();
}

}  // namespace

MetricsReport compute_metrics(const std::vector<EpisodeRecord>& records) {
  if (records.empty()) throw EmptyInput("compute_metrics: no episode records");

  std::map<std::string, std::vector<const EpisodeRecord*>> by_task;
  std::map<std::string, std::vector<const EpisodeRecord*>> by_length;
  std::vector<const EpisodeRecord*> all;
  for (const EpisodeRecord& r : records) {
    by_task[r.task_id].push_back(&r);
    by_length[r.length].push_back(&r);
    all.push_back(&r);
  }

  MetricsReport report;
  for (const auto& [task_id, group] : by_task) {
    report.rows.push_back(make_row(task_id, group[0]->length, false, group));
  }
  for (const char* length : {"S", "L"}) {
    auto it = by_length.find(length);
    if (it != by_length.end()) {
      report.rows.push_back(make_row(length, "-", true, it->second));
    }
  }
  report.rows.push_back(make_row("All", "-", true, all));
  return report;
}

std::vector<std::pair<std::string, double>> metrics_delta(
    const MetricsReport& main, const MetricsReport& ablation) {
  std::vector<std::pair<std::string, double>> deltas;
  for (const MetricsRow& row : main.rows) {
    for (const MetricsRow& other : ablation.rows) {
      if (other.label == row.label) {
        deltas.emplace_back(row.label, other.best - row.best);
        break;
      }
    }
  }
  return deltas;
}

std::string render_metrics_tsv(const MetricsReport& report) {
  std::ostringstream out;
  out << "task\ttype\tepisodes\tbase\tbest\ttrials_to_success\timproved_pct"
         "\tnorm_steps\tcurve\n";
  for (const MetricsRow& row : report.rows) {
    out << row.label << '\t' << row.length << '\t' << row.episodes << '\t'
        << format_number(row.base) << '\t' << format_number(row.best) << '\t'
        << format_number(row.trials_to_success) << '\t'
        << format_number(row.improved_pct) << '\t'
        << format_number(row.norm_steps) << '\t';
    for (std::size_t i = 0; i < row.curve.size(); ++i) {
      if (i) out << ',';
      out << format_number(row.curve[i]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cama
