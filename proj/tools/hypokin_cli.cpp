// Experiment CLI: run a config into a result bundle, validate a config, or
// emit a plot script for an existing bundle.
//
//   hypokin run <config> [--out DIR] [--workers N] [--seed S]
//   hypokin validate <config>
//   hypokin emit-plots <bundle-dir>
//
// Exit codes: 0 pass, 1 invariant failure, 2 config error, 3 out-of-hypothesis.
// The default output root comes from HYPOKIN_OUT (fallback ./results).

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "hypokin/experiments.hpp"

namespace {

int verdict_code(hypokin::Verdict v) {
  switch (v) {
    case hypokin::Verdict::pass: return 0;
    case hypokin::Verdict::fail: return 1;
    default: return 3;
  }
}

std::string default_out_root() {
  const char* env = std::getenv("HYPOKIN_OUT");
  return env ? env : "results";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypokin spectral kinetic-transport experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir, bundle_dir;
  int workers = 1;
  long long seed_override = -1;

  CLI::App* run = app.add_subcommand("run", "run an experiment config into a bundle");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output bundle directory");
  run->add_option("--workers", workers, "worker pool size (never affects numbers)");
  run->add_option("--seed", seed_override, "override the config seed");

  CLI::App* validate = app.add_subcommand("validate", "parse and check a config");
  validate->add_option("config", config_path, "config file")->required();

  CLI::App* plots = app.add_subcommand("emit-plots", "write plot.gp for a bundle");
  plots->add_option("bundle", bundle_dir, "bundle directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      hypokin::ExperimentConfig cfg = hypokin::load_config(config_path);
      std::cout << "ok: " << cfg.experiment << " (hash " << hypokin::config_hash(cfg)
                << ")\n";
      return 0;
    }
    if (plots->parsed()) {
      std::string path = hypokin::emit_plots(bundle_dir);
      std::cout << "wrote " << path << "\n";
      return 0;
    }
    hypokin::ExperimentConfig cfg = hypokin::load_config(config_path);
    if (seed_override >= 0) cfg.seed = std::uint64_t(seed_override);
    if (out_dir.empty()) {
      out_dir = (std::filesystem::path(default_out_root()) /
                 (cfg.experiment + "-" + hypokin::config_hash(cfg)))
                    .string();
    }
    auto t0 = std::chrono::steady_clock::now();
    hypokin::ExperimentResult res = hypokin::run_experiment(cfg, workers);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    hypokin::write_bundle(cfg, res, out_dir, wall, workers);
    std::cout << cfg.experiment << ": " << hypokin::to_string(res.verdict) << " ("
              << out_dir << ")\n";
    for (const auto& n : res.notes) std::cout << "  note: " << n << "\n";
    return verdict_code(res.verdict);
  } catch (const hypokin::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
