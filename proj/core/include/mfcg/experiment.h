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

#ifndef MFCG_EXPERIMENT_H_
#define MFCG_EXPERIMENT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mfcg/analytic.h"
#include "mfcg/config.h"
#include "mfcg/learner.h"
#include "mfcg/metrics.h"

namespace mfcg {

// Outcome of one seeded training run.
struct RunResult {
  std::uint64_t seed = 0;
  std::vector<EpisodeRecord> trace;
  std::vector<double> mse_alpha;  // per episode, greedy policy vs analytic
  // Averages over the trailing window of episodes.
  std::vector<double> policy_avg;
  std::vector<double> mu_avg;   // terminal global estimate
  std::vector<double> mut_avg;  // terminal local estimate
  // Terminal estimates after the last episode.
  std::vector<double> final_mu;
  std::vector<double> final_mut;
};

// Per-episode cross-run summary, one entry per episode of the common prefix
// of all run traces.
struct AggregateTable {
  std::vector<std::int64_t> episode;
  RunAggregate q_delta;
  RunAggregate mu_delta;
  RunAggregate mut_delta;
  RunAggregate mu_bar;
  RunAggregate mut_bar;
  RunAggregate mse_alpha;
  std::vector<double> mse_mu_bar;
  std::vector<double> mse_mut_bar;
};

struct ExperimentResult {
  AnalyticSolution solution;
  std::vector<double> states;
  std::vector<double> analytic_policy;
  std::vector<double> analytic_mass;  // binned stationary law
  std::vector<RunResult> runs;
  AggregateTable aggregate;
  // Window averages, further averaged over runs.
  std::vector<double> policy_avg;
  std::vector<double> mu_avg;
  std::vector<double> mut_avg;
};

// Trains cfg.runs independent learners (in parallel up to cfg.workers) and
// collects traces and window averages. Results do not depend on the worker
// count.
ExperimentResult RunExperiment(const ExperimentConfig& cfg);

// Trains a single run with index `run_index`. Exposed for tests.
RunResult RunSingle(const ExperimentConfig& cfg, std::uint64_t run_index);

// Writes trace.csv, aggregate.csv, policy.csv, distribution.csv,
// solution.json and config.json under `dir`.
void WriteOutputs(const ExperimentConfig& cfg, const ExperimentResult& result,
                  const std::filesystem::path& dir);

// Writes solution.json plus policy.csv and distribution.csv with empty
// learned columns.
void WriteAnalyticOutputs(const ExperimentConfig& cfg,
                          const std::filesystem::path& dir);

std::string SolutionJson(const AnalyticSolution& sol);

// Full-precision ("%.17g") decimal rendering used by every CSV.
std::string FormatDouble(double v);

// The MFCG configuration together with its two-timescale degenerations:
// {"mfcg", "mfg", "mfc"} with equal distribution exponents 0.75 and 0.15 for
// the latter two.
struct NamedConfig {
  std::string name;
  ExperimentConfig config;
};
std::array<NamedConfig, 3> ComparisonConfigs(const ExperimentConfig& base);

// Runs ComparisonConfigs(base) into <dir>/<name>/ and writes joined
// comparison_policy.csv and comparison_distribution.csv into dir.
std::vector<ExperimentResult> RunComparison(const ExperimentConfig& base,
                                            const std::filesystem::path& dir);

// One config per exploration heuristic, named as in ExplorationTable.
std::vector<NamedConfig> SweepConfigs(const ExperimentConfig& base);

// Runs SweepConfigs(base) into <dir>/<name>/ and writes sweep_mse.csv (mean
// control error per episode and heuristic) and sweep_summary.csv.
std::vector<ExperimentResult> RunSweep(const ExperimentConfig& base,
                                       const std::filesystem::path& dir);

}  // namespace mfcg

#endif  // MFCG_EXPERIMENT_H_
