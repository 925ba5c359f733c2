#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cama/errors.hpp"
#include "cama/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Continual-learning language agent: experiment harness"};
  app.require_subcommand(1);

  // run ---------------------------------------------------------------
  std::string config_path, mode, backend, world, out_dir, endpoint, parse_mode;
  std::vector<std::string> past;
  std::uint64_t seed = 0;
  int variants = 0, jobs = 0, tau_max = 0;
  int k = 0, window = 0, archive_cap = 0, max_tries = 0, token_budget = 0;
  double threshold = 0.0;

  CLI::App* run = app.add_subcommand(
      "run", "Run episodes and write traces, records, memories, and metrics");
  run->add_option("--config", config_path, "JSON run configuration file");
  CLI::Option* o_mode =
      run->add_option("--mode", mode, "adapt | gen-env | gen-task | g+a | ablation");
  CLI::Option* o_backend =
      run->add_option("--backend", backend, "script:<path> or live[:<model>]");
  CLI::Option* o_world =
      run->add_option("--world", world, "world/task bundle JSON file");
  CLI::Option* o_past = run->add_option(
      "--past", past, "directory of past episode records (repeatable)");
  CLI::Option* o_seed =
      run->add_option("--seed", seed, "RNG seed for variant generation");
  CLI::Option* o_variants =
      run->add_option("--variants", variants, "number of environment variants");
  CLI::Option* o_jobs =
      run->add_option("--jobs", jobs, "concurrent episode runners");
  CLI::Option* o_tau =
      run->add_option("--tau-max", tau_max, "step budget override (0 = task default)");
  CLI::Option* o_out = run->add_option("--out", out_dir, "output directory");
  CLI::Option* o_k = run->add_option("--k", k, "trials per episode");
  CLI::Option* o_window =
      run->add_option("--window", window, "previous snapshots shown to the generator");
  CLI::Option* o_archive =
      run->add_option("--archive", archive_cap, "crucial-memory archive cap");
  CLI::Option* o_threshold =
      run->add_option("--threshold", threshold, "grounding similarity threshold");
  CLI::Option* o_tries =
      run->add_option("--max-tries", max_tries, "refinement attempts per step");
  CLI::Option* o_budget =
      run->add_option("--token-budget", token_budget, "prompt token budget");
  CLI::Option* o_parse =
      run->add_option("--parse-mode", parse_mode, "lenient | strict");
  CLI::Option* o_endpoint =
      run->add_option("--endpoint", endpoint, "live backend URL");
  CLI::Option* o_abl_mem = run->add_flag(
      "--abl-causal-memory", "store free-form memory lines (ablation)");
  CLI::Option* o_abl_ctrl =
      run->add_flag("--abl-controller", "drop the rationale contract (ablation)");

  // replay --------------------------------------------------------------
  std::string trace_path;
  CLI::App* replay =
      app.add_subcommand("replay", "Re-simulate a trace and verify it byte-for-byte");
  replay->add_option("trace", trace_path, "trace JSONL file")->required();

  // metrics -------------------------------------------------------------
  std::vector<std::string> dirs;
  CLI::App* metrics = app.add_subcommand(
      "metrics", "Aggregate record directories into the metrics table");
  metrics->add_option("dirs", dirs, "episode record directories")->required();

  // validate-config -------------------------------------------------------
  std::string vc_path;
  CLI::App* vc =
      app.add_subcommand("validate-config", "Check a run configuration file");
  vc->add_option("--config", vc_path, "JSON run configuration file")->required();

  // gen-variants ----------------------------------------------------------
  std::string gv_world, gv_out = "variants";
  int gv_n = 1;
  std::uint64_t gv_seed = 0;
  CLI::App* gv = app.add_subcommand(
      "gen-variants", "Generate solvable environment variants of a world");
  gv->add_option("--world", gv_world, "world/task bundle JSON file")->required();
  gv->add_option("--n", gv_n, "number of variants")->required();
  gv->add_option("--seed", gv_seed, "RNG seed")->required();
  gv->add_option("--out", gv_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(run)) {
      cama::RunConfig cfg;
      if (!config_path.empty()) cfg = cama::load_run_config(config_path);
      if (o_mode->count()) cfg.mode = mode;
      if (o_backend->count()) cfg.backend = backend;
      if (o_world->count()) cfg.world_file = world;
      if (o_past->count()) cfg.past_dirs = past;
      if (o_seed->count()) cfg.seed = seed;
      if (o_variants->count()) cfg.variants = variants;
      if (o_jobs->count()) cfg.jobs = jobs;
      if (o_tau->count()) cfg.tau_max = tau_max;
      if (o_out->count()) cfg.out_dir = out_dir;
      if (o_k->count()) cfg.hyper.k = k;
      if (o_window->count()) cfg.hyper.window = window;
      if (o_archive->count()) cfg.hyper.archive_cap = archive_cap;
      if (o_threshold->count()) cfg.hyper.threshold = threshold;
      if (o_tries->count()) cfg.hyper.max_tries = max_tries;
      if (o_budget->count()) cfg.hyper.token_budget = token_budget;
      if (o_endpoint->count()) cfg.endpoint = endpoint;
      if (o_abl_mem->count()) cfg.flags.abl_causal_memory = true;
      if (o_abl_ctrl->count()) cfg.flags.abl_controller = true;
      if (o_parse->count()) {
        if (parse_mode == "lenient") {
          cfg.hyper.parse_mode = cama::ParseMode::LENIENT;
        } else if (parse_mode == "strict") {
          cfg.hyper.parse_mode = cama::ParseMode::STRICT;
        } else {
          throw cama::InvalidConfig("parse-mode: must be 'lenient' or 'strict'");
        }
      }
      return cama::cmd_run(cfg, std::cout, std::cerr);
    }
    if (app.got_subcommand(replay)) {
      return cama::cmd_replay(trace_path, std::cout, std::cerr);
    }
    if (app.got_subcommand(metrics)) {
      return cama::cmd_metrics(dirs, std::cout, std::cerr);
    }
    if (app.got_subcommand(vc)) {
      return cama::cmd_validate_config(vc_path, std::cout, std::cerr);
    }
    if (app.got_subcommand(gv)) {
      return cama::cmd_gen_variants(gv_world, gv_n, gv_seed, gv_out, std::cout,
                                    std::cerr);
    }
  } catch (const cama::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 1;
}
