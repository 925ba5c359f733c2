#include <string>
#include <vector>

#include "cama/errors.hpp"
#include "cama/metrics.hpp"
#include "doctest.h"

using namespace cama;

namespace {

// Record with the given per-trial rewards; every trial pretends to have
// `steps` executed steps against a 30-step budget.
EpisodeRecord make_record(const std::string& task_id, const std::string& length,
                          const std::vector<int>& rewards, int steps = 3) {
  EpisodeRecord r;
  r.task_id = task_id;
  r.length = length;
  r.bundle.task.task_id = task_id;
  r.bundle.task.max_steps = 30;
  for (int reward : rewards) {
    TrialTrace t;
    t.final_reward = reward;
    t.steps.resize(steps);
    r.trials.push_back(t);
  }
  return r;
}

const MetricsRow& row_of(const MetricsReport& report, const std::string& label) {
  for (const MetricsRow& row : report.rows) {
    if (row.label == label) return row;
  }
  REQUIRE(false);
  return report.rows.front();
}

}  // namespace

TEST_CASE("a single improving episode yields the direct metrics") {
  MetricsReport report = compute_metrics({make_record("boil", "S", {40, 100})});
  const MetricsRow& row = row_of(report, "boil");
  CHECK(row.episodes == 1);
  CHECK(row.base == doctest::Approx(40.0));
  CHECK(row.best == doctest::Approx(100.0));
  CHECK(row.trials_to_success == doctest::Approx(2.0));
  CHECK(row.improved_pct == doctest::Approx(100.0));
  CHECK(row.norm_steps == doctest::Approx(0.1));
  REQUIRE(row.curve.size() == 2);
  CHECK(row.curve[0] == doctest::Approx(40.0));
  CHECK(row.curve[1] == doctest::Approx(100.0));
}

TEST_CASE("episodes that never beat their first trial count as unimproved") {
  MetricsReport report = compute_metrics(
      {make_record("a", "S", {50}), make_record("a", "S", {50, 50})});
  const MetricsRow& row = row_of(report, "a");
  CHECK(row.episodes == 2);
  CHECK(row.improved_pct == doctest::Approx(0.0));
  CHECK(row.base == doctest::Approx(50.0));
  CHECK(row.best == doctest::Approx(50.0));
  // No success: trials-to-success falls back to the trials run.
  CHECK(row.trials_to_success == doctest::Approx(1.5));
}

TEST_CASE("aggregate rows cover lengths present in the records") {
  const std::vector<EpisodeRecord> records = {
      make_record("boil", "S", {40, 100}),
      make_record("grow", "L", {20, 30, 80}),
      make_record("melt", "S", {60}),
  };
  MetricsReport report = compute_metrics(records);

  REQUIRE(report.rows.size() == 6);  // 3 tasks + S + L + All
  CHECK(report.rows[3].label == "S");
  CHECK(report.rows[4].label == "L");
  CHECK(report.rows[5].label == "All");
  CHECK(report.rows[5].aggregate);

  const MetricsRow& s = row_of(report, "S");
  CHECK(s.episodes == 2);
  CHECK(s.base == doctest::Approx(50.0));
  CHECK(s.best == doctest::Approx(80.0));

  const MetricsRow& all = row_of(report, "All");
  CHECK(all.episodes == 3);
  CHECK(all.base == doctest::Approx(40.0));

  // S-only inputs produce no "L" row.
  MetricsReport s_only = compute_metrics({make_record("boil", "S", {10})});
  for (const MetricsRow& row : s_only.rows) CHECK(row.label != "L");
}

TEST_CASE("score curves carry early-stopped episodes forward") {
  MetricsReport report = compute_metrics(
      {make_record("t", "S", {40, 100}),
       make_record("t", "S", {20, 30, 60, 80, 90})});
  const MetricsRow& row = row_of(report, "t");
  REQUIRE(row.curve.size() == 5);
  CHECK(row.curve[0] == doctest::Approx(30.0));
  CHECK(row.curve[1] == doctest::Approx(65.0));
  CHECK(row.curve[2] == doctest::Approx(80.0));   // (100 carried + 60) / 2
  CHECK(row.curve[4] == doctest::Approx(95.0));
}

TEST_CASE("metrics_delta reports ablation minus main per shared label") {
  MetricsReport main =
      compute_metrics({make_record("boil", "S", {40, 100})});
  MetricsReport ablation =
      compute_metrics({make_record("boil", "S", {40, 80})});
  auto deltas = metrics_delta(main, ablation);

  REQUIRE(deltas.size() == 3);  // boil, S, All
  for (const auto& [label, delta] : deltas) {
    CAPTURE(label);
    CHECK(delta == doctest::Approx(-20.0));
  }
  CHECK(deltas[0].first == "boil");
  CHECK(deltas.back().first == "All");
}

TEST_CASE("the TSV table has a header and one line per row") {
  MetricsReport report = compute_metrics({make_record("boil", "S", {40, 100})});
  const std::string tsv = render_metrics_tsv(report);
  CHECK(tsv.rfind("task\ttype\tepisodes\tbase\tbest\ttrials_to_success\t"
                  "improved_pct\tnorm_steps\tcurve\n",
                  0) == 0);
  CHECK(tsv.find("boil\tS\t1\t40.0\t100.0\t2.0\t100.0\t0.1\t40.0,100.0\n") !=
        std::string::npos);
  CHECK(tsv.find("All\t-\t1\t") != std::string::npos);
}

TEST_CASE("metrics over zero records fail loudly") {
  CHECK_THROWS_AS(compute_metrics({}), EmptyInput);
}
