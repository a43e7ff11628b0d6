// Copyright 2026 The MFCG-QL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end:
//
//   mfcg solve   [--preset NAME | --config PATH] [--out DIR]
//   mfcg train   [--preset NAME | --config PATH] [--runs N] [--episodes K]
//                [--seed S] [--out DIR] [--workers W] [--thin N]
//   mfcg compare (same flags as train)
//   mfcg sweep   (same flags as train; default preset exploration_sweep)

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mfcg/analytic.h"
#include "mfcg/config.h"
#include "mfcg/experiment.h"

namespace {

struct Flags {
  std::string config_path;
  std::string preset;
  std::optional<std::int64_t> runs;
  std::optional<std::int64_t> episodes;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::int64_t> workers;
  std::optional<std::int64_t> thin;
};

void AddRunFlags(CLI::App& cmd, Flags& flags) {
  cmd.add_option("--config", flags.config_path, "JSON config file");
  cmd.add_option("--preset", flags.preset,
                 "mfcg_baseline | mfg_degenerate | mfc_degenerate | "
                 "exploration_sweep");
  cmd.add_option("--runs", flags.runs, "independent runs");
  cmd.add_option("--episodes", flags.episodes, "episodes per run (K)");
  cmd.add_option("--seed", flags.seed, "base seed");
  cmd.add_option("--out", flags.out, "output directory");
  cmd.add_option("--workers", flags.workers, "parallel runs (0 = all cores)");
  cmd.add_option("--thin", flags.thin, "emit every N-th episode to the CSVs");
}

mfcg::ExperimentConfig Resolve(const Flags& flags,
                               mfcg::Preset default_preset) {
  if (!flags.config_path.empty() && !flags.preset.empty()) {
    throw mfcg::ConfigError("--config and --preset are mutually exclusive");
  }
  mfcg::ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    if (!std::filesystem::exists(flags.config_path)) {
      throw mfcg::ConfigError("config file not found: " + flags.config_path);
    }
    cfg = mfcg::LoadConfig(flags.config_path);
  } else {
    cfg = mfcg::PresetConfig(flags.preset.empty()
                                 ? default_preset
                                 : mfcg::ParsePreset(flags.preset));
  }
  if (flags.runs) cfg.runs = *flags.runs;
  if (flags.episodes) {
    cfg.learn.episodes = *flags.episodes;
    cfg.learn.exploration.total_episodes = *flags.episodes;
  }
  if (flags.seed) cfg.base_seed = *flags.seed;
  if (flags.out) cfg.output_dir = *flags.out;
  if (flags.workers) cfg.workers = *flags.workers;
  if (flags.thin) cfg.thin = *flags.thin;
  cfg.Validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean field control game solver: closed form and Q-learning"};
  app.require_subcommand(1);

  Flags solve_flags, train_flags, compare_flags, sweep_flags;
  auto* solve = app.add_subcommand("solve", "print the stationary solution");
  solve->add_option("--config", solve_flags.config_path, "JSON config file");
  solve->add_option("--preset", solve_flags.preset, "preset name");
  solve->add_option("--out", solve_flags.out,
                    "also write solution.json, policy.csv, distribution.csv");
  auto* train = app.add_subcommand("train", "run a multi-run experiment");
  AddRunFlags(*train, train_flags);
  auto* compare = app.add_subcommand(
      "compare", "run the MFCG config and its MFG/MFC degenerations");
  AddRunFlags(*compare, compare_flags);
  auto* sweep =
      app.add_subcommand("sweep", "run all nine exploration heuristics");
  AddRunFlags(*sweep, sweep_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const auto cfg = Resolve(solve_flags, mfcg::Preset::kMfcgBaseline);
      std::cout << mfcg::SolutionJson(mfcg::SolveAsymptotic(cfg.model));
      if (solve_flags.out) mfcg::WriteAnalyticOutputs(cfg, *solve_flags.out);
    } else if (*train) {
      const auto cfg = Resolve(train_flags, mfcg::Preset::kMfcgBaseline);
      const auto result = mfcg::RunExperiment(cfg);
      mfcg::WriteOutputs(cfg, result, cfg.output_dir);
      std::cout << "wrote " << cfg.output_dir << "\n";
    } else if (*compare) {
      const auto cfg = Resolve(compare_flags, mfcg::Preset::kMfcgBaseline);
      mfcg::RunComparison(cfg, cfg.output_dir);
      std::cout << "wrote " << cfg.output_dir << "\n";
    } else if (*sweep) {
      const auto cfg = Resolve(sweep_flags, mfcg::Preset::kExplorationSweep);
      mfcg::RunSweep(cfg, cfg.output_dir);
      std::cout << "wrote " << cfg.output_dir << "\n";
    }
  } catch (const mfcg::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
