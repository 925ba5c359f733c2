#include "cama/harness.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "cama/errors.hpp"
#include "cama/http_backend.hpp"
#include "cama/metrics.hpp"
#include "cama/orchestrator.hpp"
#include "cama/script_backend.hpp"
#include "cama/solver.hpp"
#include "cama/trace.hpp"
#include "cama/world.hpp"
#include "cama/world_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace cama {
namespace {

void check_known(const json& j, const std::string& prefix,
                 std::initializer_list<const char*> known,
                 const std::string& source) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) {
      throw InvalidConfig(source + ": unknown field '" + prefix + it.key() +
                          "'");
    }
  }
}

template <typename T>
T field_or(const json& j, const char* key, const T& fallback,
           const std::string& prefix, const std::string& source) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidConfig(source + ": " + prefix + key + ": wrong type");
  }
}

std::string pad3(int n) {
  std::ostringstream out;
  out << std::setw(3) << std::setfill('0') << n;
  return out.str();
}

std::string fmt1(double x) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << x;
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TraceIoError("cannot write file " + path);
  out << body;
}

bool is_gen_mode(const std::string& mode) {
  return mode == "gen-env" || mode == "gen-task" || mode == "g+a";
}

std::unique_ptr<Backend> make_backend(const RunConfig& config,
                                      std::shared_ptr<const Script> script) {
  if (script) return std::make_unique<ScriptSession>(std::move(script));
  LiveConfig live;
  live.endpoint_url = config.endpoint;
  if (config.backend.rfind("live:", 0) == 0 && config.backend.size() > 5) {
    live.model = config.backend.substr(5);
  }
  return std::make_unique<HttpBackend>(live);
}

}  // namespace

RunConfig parse_run_config(const json& j, const std::string& source) {
  if (!j.is_object()) {
    throw InvalidConfig(source + ": config must be a JSON object");
  }
  check_known(j, "",
              {"mode", "backend", "world", "past", "hyper", "tau_max", "seed",
               "variants", "jobs", "out_dir", "flags", "endpoint"},
              source);
  RunConfig c;
  c.mode = field_or(j, "mode", c.mode, "", source);
  c.backend = field_or(j, "backend", c.backend, "", source);
  c.world_file = field_or(j, "world", c.world_file, "", source);
  c.past_dirs = field_or(j, "past", c.past_dirs, "", source);
  c.tau_max = field_or(j, "tau_max", c.tau_max, "", source);
  if (j.contains("seed")) {
    c.seed = field_or(j, "seed", std::uint64_t{0}, "", source);
  }
  c.variants = field_or(j, "variants", c.variants, "", source);
  c.jobs = field_or(j, "jobs", c.jobs, "", source);
  c.out_dir = field_or(j, "out_dir", c.out_dir, "", source);
  c.endpoint = field_or(j, "endpoint", c.endpoint, "", source);

  if (j.contains("hyper")) {
    const json& h = j.at("hyper");
    if (!h.is_object()) throw InvalidConfig(source + ": hyper: must be an object");
    check_known(h, "hyper.",
                {"k", "window", "archive_cap", "threshold", "max_tries",
                 "token_budget", "parse_mode"},
                source);
    c.hyper.k = field_or(h, "k", c.hyper.k, "hyper.", source);
    c.hyper.window = field_or(h, "window", c.hyper.window, "hyper.", source);
    c.hyper.archive_cap =
        field_or(h, "archive_cap", c.hyper.archive_cap, "hyper.", source);
    c.hyper.threshold =
        field_or(h, "threshold", c.hyper.threshold, "hyper.", source);
    c.hyper.max_tries =
        field_or(h, "max_tries", c.hyper.max_tries, "hyper.", source);
    c.hyper.token_budget =
        field_or(h, "token_budget", c.hyper.token_budget, "hyper.", source);
    const std::string mode =
        field_or(h, "parse_mode", std::string("lenient"), "hyper.", source);
    if (mode == "lenient") {
      c.hyper.parse_mode = ParseMode::LENIENT;
    } else if (mode == "strict") {
      c.hyper.parse_mode = ParseMode::STRICT;
    } else {
      throw InvalidConfig(source +
                          ": hyper.parse_mode: must be 'lenient' or 'strict'");
    }
  }

  if (j.contains("flags")) {
    const json& f = j.at("flags");
    if (!f.is_object()) throw InvalidConfig(source + ": flags: must be an object");
    check_known(f, "flags.", {"abl_causal_memory", "abl_controller"}, source);
    c.flags.abl_causal_memory =
        field_or(f, "abl_causal_memory", false, "flags.", source);
    c.flags.abl_controller =
        field_or(f, "abl_controller", false, "flags.", source);
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidConfig("cannot parse config file " + path + ": " + e.what());
  }
  return parse_run_config(j, path);
}

void validate_run_config(const RunConfig& c) {
  auto fail = [](const std::string& path, const std::string& why) {
    throw InvalidConfig(path + ": " + why);
  };
  static const std::set<std::string> kModes = {"adapt", "gen-env", "gen-task",
                                               "g+a", "ablation"};
  if (!kModes.count(c.mode)) {
    fail("mode", "must be one of adapt, gen-env, gen-task, g+a, ablation");
  }
  if (c.backend.empty()) {
    fail("backend", "required ('script:<path>' or 'live[:<model>]')");
  }
  if (c.backend.rfind("script:", 0) == 0) {
    if (c.backend.size() == 7) {
      fail("backend", "script path required ('script:<path>')");
    }
  } else if (c.backend == "live" || c.backend.rfind("live:", 0) == 0) {
    if (c.endpoint.empty()) fail("endpoint", "required for the live backend");
  } else {
    fail("backend", "must be 'script:<path>' or 'live[:<model>]'");
  }
  if (c.world_file.empty()) fail("world", "required");
  if (c.hyper.k < 1) fail("hyper.k", "must be positive");
  if (c.hyper.window < 1) fail("hyper.window", "must be positive");
  if (c.hyper.archive_cap < 1) fail("hyper.archive_cap", "must be positive");
  if (!(c.hyper.threshold > 0.0 && c.hyper.threshold <= 1.0)) {
    fail("hyper.threshold", "must be in (0, 1]");
  }
  if (c.hyper.max_tries < 1) fail("hyper.max_tries", "must be positive");
  if (c.hyper.token_budget < 1) fail("hyper.token_budget", "must be positive");
  if (c.tau_max < 0) fail("tau_max", "must be >= 0");
  if (c.variants < 1) fail("variants", "must be >= 1");
  if (c.variants > 1 && !c.seed.has_value()) {
    fail("seed", "required when variants > 1");
  }
  if (c.jobs < 1) fail("jobs", "must be >= 1");
  if (is_gen_mode(c.mode) && c.past_dirs.empty()) {
    fail("past", "required for mode " + c.mode);
  }
  if (c.mode == "ablation" && !c.flags.abl_causal_memory &&
      !c.flags.abl_controller) {
    fail("flags", "ablation mode requires at least one ablation flag");
  }
  if (c.out_dir.empty()) fail("out_dir", "required");
}

void replay_trace(const EpisodeRecord& rec) {
  int global = 0;
  for (std::size_t ti = 0; ti < rec.trials.size(); ++ti) {
    const TrialTrace& trial = rec.trials[ti];
    World world(rec.bundle);
    if (trial.initial_observation != world.initial_observation()) {
      throw DivergenceAt(global, "trial " + std::to_string(ti) +
                                     ": initial observation differs");
    }
    for (std::size_t si = 0; si < trial.steps.size(); ++si) {
      const TrialStep& step = trial.steps[si];
      StepResult got;
      if (step.special == "task_complete") {
        got.observation = kTaskCompleteObservation;
        got.score = world.score();
      } else if (step.special == "refine_failure") {
        got = world.step_unknown();
      } else {
        got = world.step(step.action);
      }
      const std::string where =
          "trial " + std::to_string(ti) + " step " + std::to_string(si);
      if (got.observation != step.observation) {
        throw DivergenceAt(global, where + ": observation differs\n  recorded: " +
                                       step.observation +
                                       "\n  replayed: " + got.observation);
      }
      if (got.score != step.score) {
        throw DivergenceAt(global, where + ": score differs (recorded " +
                                       std::to_string(step.score) +
                                       ", replayed " +
                                       std::to_string(got.score) + ")");
      }
      ++global;
    }
    if (trial.final_reward != world.score()) {
      throw DivergenceAt(std::max(global - 1, 0),
                         "trial " + std::to_string(ti) +
                             ": final reward differs (recorded " +
                             std::to_string(trial.final_reward) +
                             ", replayed " + std::to_string(world.score()) +
                             ")");
    }
  }
  const std::uint64_t recomputed = episode_content_hash(rec);
  if (recomputed != rec.content_hash) {
    throw TraceIoError("content hash mismatch: recorded " +
                       std::to_string(rec.content_hash) + ", recomputed " +
                       std::to_string(recomputed));
  }
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_run_config(config);
    Bundle base = load_bundle(config.world_file);
    if (config.tau_max > 0) base.task.max_steps = config.tau_max;

    std::vector<Bundle> bundles;
    if (config.variants > 1) {
      bundles = make_variants(base, config.variants, config.seed.value_or(0));
    } else {
      validate_bundle(base);
      bundles.push_back(base);
    }

    std::vector<EpisodeRecord> past;
    if (is_gen_mode(config.mode)) {
      for (const std::string& dir : config.past_dirs) {
        std::vector<EpisodeRecord> batch = load_record_dir(dir);
        past.insert(past.end(), batch.begin(), batch.end());
      }
      if (past.empty()) {
        throw InvalidConfig("past: no episode records found in " +
                            std::to_string(config.past_dirs.size()) +
                            " directory(ies)");
      }
    }

    std::shared_ptr<const Script> script;
    if (config.backend.rfind("script:", 0) == 0) {
      script = std::make_shared<const Script>(
          load_script(config.backend.substr(7)));
    }

    fs::create_directories(config.out_dir + "/traces");
    fs::create_directories(config.out_dir + "/records");
    fs::create_directories(config.out_dir + "/memories");

    const int n = static_cast<int>(bundles.size());
    std::vector<std::string> failures(n);
    std::vector<std::optional<EpisodeRecord>> records(n);
    std::vector<std::string> trace_paths(n);
    for (int i = 0; i < n; ++i) {
      trace_paths[i] = config.out_dir + "/traces/ep_" + pad3(i) + ".jsonl";
    }

    OrchestratorConfig oc;
    oc.hyper = config.hyper;
    oc.flags = config.flags;
    oc.seed = config.seed.value_or(0);
    oc.mode_label = config.mode == "ablation" ? "adapt" : config.mode;

    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          std::ofstream tf(trace_paths[i], std::ios::binary);
          if (!tf) throw TraceIoError("cannot open trace file " + trace_paths[i]);
          TraceWriter writer(tf);
          std::unique_ptr<Backend> backend = make_backend(config, script);
          if (config.mode == "gen-env" || config.mode == "g+a") {
            records[i] = run_generalization(GenKind::GEN_ENV, *backend,
                                            bundles[i], past, oc, &writer);
          } else if (config.mode == "gen-task") {
            records[i] = run_generalization(GenKind::GEN_TASK, *backend,
                                            bundles[i], past, oc, &writer);
          } else {
            records[i] = run_adaptation(*backend, bundles[i], std::nullopt, oc,
                                        &writer);
          }
        } catch (const Error& e) {
          failures[i] = "episode " + std::to_string(i) + " (variant " +
                        std::to_string(bundles[i].world.variant_id) +
                        "): " + e.what();
        }
      }
    };

    std::vector<std::thread> threads;
    for (int t = 1; t < std::min(config.jobs, n); ++t) {
      threads.emplace_back(worker);
    }
    worker();
    for (std::thread& t : threads) t.join();

    // Deterministic merge of the per-episode traces, in episode order.
    std::string merged;
    for (int i = 0; i < n; ++i) merged += read_file(trace_paths[i]);
    write_file(config.out_dir + "/trace.jsonl", merged);

    std::vector<EpisodeRecord> done;
    for (int i = 0; i < n; ++i) {
      if (!records[i]) continue;
      const EpisodeRecord& r = *records[i];
      const std::string stem = "ep_" + pad3(i) + "_" + r.task_id;
      save_record(r, config.out_dir + "/records/" + stem + ".json");
      json memories{{"task_id", r.task_id},
                    {"mode", r.mode},
                    {"snapshots", r.snapshots}};
      if (r.meta) memories["meta"] = *r.meta;
      write_file(config.out_dir + "/memories/" + stem + ".json",
                 memories.dump(2) + "\n");
      out << "episode " << i << " (" << r.task_id << ", variant "
          << r.variant_id << "): best reward " << r.best_reward() << " over "
          << r.trials.size() << " trial(s)\n";
      done.push_back(r);
    }

    if (!done.empty()) {
      const std::string tsv = render_metrics_tsv(compute_metrics(done));
      write_file(config.out_dir + "/metrics.tsv", tsv);
      out << tsv;
    }

    bool failed = false;
    for (const std::string& f : failures) {
      if (!f.empty()) {
        err << f << "\n";
        failed = true;
      }
    }
    return failed ? 1 : 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
}

int cmd_replay(const std::string& trace_path, std::ostream& out,
               std::ostream& err) {
  try {
    const EpisodeRecord rec = read_trace_file(trace_path);
    replay_trace(rec);
    int steps = 0;
    for (const TrialTrace& t : rec.trials) steps += static_cast<int>(t.steps.size());
    out << "replay OK: " << rec.trials.size() << " trial(s), " << steps
        << " step(s), content hash " << rec.content_hash << "\n";
    return 0;
  } catch (const DivergenceAt& d) {
    err << "divergence at step " << d.step() << ": " << d.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
}

int cmd_metrics(const std::vector<std::string>& record_dirs, std::ostream& out,
                std::ostream& err) {
  try {
    if (record_dirs.empty()) {
      throw EmptyInput("cmd_metrics: at least one record directory required");
    }
    std::vector<MetricsReport> reports;
    for (const std::string& dir : record_dirs) {
      std::vector<EpisodeRecord> records = load_record_dir(dir);
      if (records.empty()) {
        throw EmptyInput("cmd_metrics: no episode records in " + dir);
      }
      reports.push_back(compute_metrics(records));
    }
    for (std::size_t i = 0; i < reports.size(); ++i) {
      out << "# set " << (i + 1) << ": " << record_dirs[i] << "\n";
      out << render_metrics_tsv(reports[i]);
    }
    if (reports.size() == 2) {
      out << "# delta avg best score (set 2 - set 1)\n";
      for (const auto& [label, delta] : metrics_delta(reports[0], reports[1])) {
        out << label << "\t" << fmt1(delta) << "\n";
      }
    }
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
}

int cmd_validate_config(const std::string& config_path, std::ostream& out,
                        std::ostream& err) {
  try {
    const RunConfig config = load_run_config(config_path);
    validate_run_config(config);
    out << "config OK: mode " << config.mode << ", backend " << config.backend
        << ", world " << config.world_file << "\n";
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
}

int cmd_gen_variants(const std::string& world_file, int n, std::uint64_t seed,
                     const std::string& out_dir, std::ostream& out,
                     std::ostream& err) {
  try {
    const Bundle base = load_bundle(world_file);
    const std::vector<Bundle> variants = make_variants(base, n, seed);
    fs::create_directories(out_dir);
    for (const Bundle& b : variants) {
      const std::string path = out_dir + "/" + b.task.task_id + "_v" +
                               std::to_string(b.world.variant_id) + ".json";
      write_file(path, json(b).dump(2) + "\n");
      out << "wrote " << path << "\n";
    }
    out << variants.size() << " solvable variant(s) of " << base.task.task_id
        << "\n";
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  }
}

}  // namespace cama
