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

#include "mfcg/experiment.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "mfcg/env.h"

namespace mfcg {
namespace fs = std::filesystem;
namespace {

std::ofstream OpenForWrite(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void Accumulate(std::vector<double>& acc, std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
}

void Scale(std::vector<double>& v, double s) {
  for (double& x : v) x *= s;
}

bool EmitRow(std::size_t e, std::size_t len, std::int64_t thin) {
  return e % static_cast<std::size_t>(thin) == 0 || e + 1 == len;
}

AggregateTable BuildAggregate(const std::vector<RunResult>& runs,
                              double mu_bar_target) {
  std::size_t len = runs.front().trace.size();
  for (const auto& r : runs) len = std::min(len, r.trace.size());

  auto column = [&](auto pick) {
    std::vector<std::vector<double>> traces;
    traces.reserve(runs.size());
    for (const auto& r : runs) {
      std::vector<double> t(len);
      for (std::size_t e = 0; e < len; ++e) t[e] = pick(r, e);
      traces.push_back(std::move(t));
    }
    return traces;
  };

  AggregateTable table;
  table.episode.resize(len);
  for (std::size_t e = 0; e < len; ++e) {
    table.episode[e] = runs.front().trace[e].episode;
  }
  const auto mu_bars =
      column([](const RunResult& r, std::size_t e) { return r.trace[e].mu_bar; });
  const auto mut_bars = column(
      [](const RunResult& r, std::size_t e) { return r.trace[e].mut_bar; });
  table.q_delta = Aggregate(column(
      [](const RunResult& r, std::size_t e) { return r.trace[e].q_delta; }));
  table.mu_delta = Aggregate(column(
      [](const RunResult& r, std::size_t e) { return r.trace[e].mu_delta; }));
  table.mut_delta = Aggregate(column(
      [](const RunResult& r, std::size_t e) { return r.trace[e].mut_delta; }));
  table.mu_bar = Aggregate(mu_bars);
  table.mut_bar = Aggregate(mut_bars);
  table.mse_alpha = Aggregate(
      column([](const RunResult& r, std::size_t e) { return r.mse_alpha[e]; }));

  table.mse_mu_bar.resize(len);
  table.mse_mut_bar.resize(len);
  std::vector<double> obs(runs.size());
  for (std::size_t e = 0; e < len; ++e) {
    for (std::size_t r = 0; r < runs.size(); ++r) obs[r] = mu_bars[r][e];
    table.mse_mu_bar[e] = MseMean(obs, mu_bar_target);
    for (std::size_t r = 0; r < runs.size(); ++r) obs[r] = mut_bars[r][e];
    table.mse_mut_bar[e] = MseMean(obs, mu_bar_target);
  }
  return table;
}

void WriteSolutionFile(const AnalyticSolution& sol, const fs::path& dir) {
  auto out = OpenForWrite(dir / "solution.json");
  out << SolutionJson(sol);
}

void WritePolicyCsv(const fs::path& path, std::span<const double> states,
                    std::span<const double> learned,
                    std::span<const double> analytic) {
  auto out = OpenForWrite(path);
  out << "x,learned,analytic\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    out << FormatDouble(states[i]) << ','
        << (learned.empty() ? "" : FormatDouble(learned[i])) << ','
        << FormatDouble(analytic[i]) << '\n';
  }
}

void WriteDistributionCsv(const fs::path& path, std::span<const double> states,
                          std::span<const double> mu,
                          std::span<const double> mut,
                          std::span<const double> analytic) {
  auto out = OpenForWrite(path);
  out << "x,learned_mu,learned_mut,analytic\n";
  for (std::size_t i = 0; i < states.size(); ++i) {
    out << FormatDouble(states[i]) << ','
        << (mu.empty() ? "" : FormatDouble(mu[i])) << ','
        << (mut.empty() ? "" : FormatDouble(mut[i])) << ','
        << FormatDouble(analytic[i]) << '\n';
  }
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string SolutionJson(const AnalyticSolution& sol) {
  nlohmann::json doc = {{"gamma2", sol.gamma2}, {"gamma1", sol.gamma1},
                        {"gamma0", sol.gamma0}, {"mu_bar", sol.mu_bar},
                        {"var", sol.var}};
  return doc.dump(2) + "\n";
}

RunResult RunSingle(const ExperimentConfig& cfg, std::uint64_t run_index) {
  const auto states = std::make_shared<const Grid>(cfg.state_grid.Build());
  const auto actions = std::make_shared<const Grid>(cfg.action_grid.Build());
  const AnalyticSolution sol = SolveAsymptotic(cfg.model);
  const ProbVec weight = StationaryDensityOnGrid(sol, states);

  RunResult result;
  result.seed = DeriveRunSeed(cfg.base_seed, run_index);
  LearnConfig learn = cfg.learn;
  learn.seed = result.seed;

  BankLendingEnv env(cfg.model, states, actions, learn.dt, result.seed,
                     cfg.drift_mean);

  const std::size_t n = states->size();
  result.policy_avg.assign(n, 0.0);
  result.mu_avg.assign(n, 0.0);
  result.mut_avg.assign(n, 0.0);
  result.mse_alpha.reserve(static_cast<std::size_t>(learn.episodes));
  const std::int64_t window_start = learn.episodes - cfg.EffectiveWindow();
  std::int64_t in_window = 0;

  const LearnerState final_state =
      RunTraining(env, learn, [&](const LearnerState& s) {
        const std::vector<double> policy = GreedyPolicy(s.q, *actions);
        result.mse_alpha.push_back(MseControl(policy, sol, weight));
        if (s.episode > window_start) {
          Accumulate(result.policy_avg, policy);
          Accumulate(result.mu_avg, s.mu.back().mass());
          Accumulate(result.mut_avg, s.mut.back().mass());
          ++in_window;
        }
      });

  // An early break can leave the window partially filled (or empty).
  if (in_window == 0) {
    result.policy_avg = GreedyPolicy(final_state.q, *actions);
    const auto mu = final_state.mu.back().mass();
    const auto mut = final_state.mut.back().mass();
    result.mu_avg.assign(mu.begin(), mu.end());
    result.mut_avg.assign(mut.begin(), mut.end());
  } else {
    const double inv = 1.0 / static_cast<double>(in_window);
    Scale(result.policy_avg, inv);
    Scale(result.mu_avg, inv);
    Scale(result.mut_avg, inv);
  }
  result.trace = final_state.trace;
  const auto mu = final_state.mu.back().mass();
  const auto mut = final_state.mut.back().mass();
  result.final_mu.assign(mu.begin(), mu.end());
  result.final_mut.assign(mut.begin(), mut.end());
  return result;
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  ExperimentResult out;
  const Grid states = cfg.state_grid.Build();
  out.solution = SolveAsymptotic(cfg.model);
  out.states.assign(states.points().begin(), states.points().end());
  out.analytic_policy.resize(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    out.analytic_policy[i] = OptimalControl(out.solution, states[i]);
  }
  const ProbVec density = StationaryDensityOnGrid(
      out.solution, std::make_shared<const Grid>(states));
  out.analytic_mass.assign(density.mass().begin(), density.mass().end());

  const std::size_t runs = static_cast<std::size_t>(cfg.runs);
  out.runs.resize(runs);
  std::vector<std::exception_ptr> errors(runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs; i = next++) {
      try {
        out.runs[i] = RunSingle(cfg, i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t workers = cfg.workers > 0
                            ? static_cast<std::size_t>(cfg.workers)
                            : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, runs);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < runs; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw std::runtime_error("run " + std::to_string(i) +
                               " failed: " + e.what());
    }
  }

  out.aggregate = BuildAggregate(out.runs, out.solution.mu_bar);
  const std::size_t n = states.size();
  out.policy_avg.assign(n, 0.0);
  out.mu_avg.assign(n, 0.0);
  out.mut_avg.assign(n, 0.0);
  for (const auto& r : out.runs) {
    Accumulate(out.policy_avg, r.policy_avg);
    Accumulate(out.mu_avg, r.mu_avg);
    Accumulate(out.mut_avg, r.mut_avg);
  }
  const double inv = 1.0 / static_cast<double>(runs);
  Scale(out.policy_avg, inv);
  Scale(out.mu_avg, inv);
  Scale(out.mut_avg, inv);
  return out;
}

void WriteOutputs(const ExperimentConfig& cfg, const ExperimentResult& result,
                  const fs::path& dir) {
  fs::create_directories(dir);
  {
    auto out = OpenForWrite(dir / "trace.csv");
    out << "run,k,q_delta,mu_delta,mut_delta,mu_bar,mut_bar\n";
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
      const auto& trace = result.runs[r].trace;
      for (std::size_t e = 0; e < trace.size(); ++e) {
        if (!EmitRow(e, trace.size(), cfg.thin)) continue;
        const auto& rec = trace[e];
        out << r << ',' << rec.episode << ',' << FormatDouble(rec.q_delta)
            << ',' << FormatDouble(rec.mu_delta) << ','
            << FormatDouble(rec.mut_delta) << ',' << FormatDouble(rec.mu_bar)
            << ',' << FormatDouble(rec.mut_bar) << '\n';
      }
    }
  }
  {
    const AggregateTable& a = result.aggregate;
    auto out = OpenForWrite(dir / "aggregate.csv");
    out << "k,q_delta_mean,q_delta_std,mu_delta_mean,mu_delta_std,"
           "mut_delta_mean,mut_delta_std,mu_bar_mean,mu_bar_std,"
           "mut_bar_mean,mut_bar_std,mse_alpha_mean,mse_alpha_std,"
           "mse_mu_bar,mse_mut_bar\n";
    const std::size_t len = a.episode.size();
    for (std::size_t e = 0; e < len; ++e) {
      if (!EmitRow(e, len, cfg.thin)) continue;
      out << a.episode[e];
      for (const RunAggregate* col : {&a.q_delta, &a.mu_delta, &a.mut_delta,
                                      &a.mu_bar, &a.mut_bar, &a.mse_alpha}) {
        out << ',' << FormatDouble(col->mean[e]) << ','
            << FormatDouble(col->std[e]);
      }
      out << ',' << FormatDouble(a.mse_mu_bar[e]) << ','
          << FormatDouble(a.mse_mut_bar[e]) << '\n';
    }
  }
  WritePolicyCsv(dir / "policy.csv", result.states, result.policy_avg,
                 result.analytic_policy);
  WriteDistributionCsv(dir / "distribution.csv", result.states, result.mu_avg,
                       result.mut_avg, result.analytic_mass);
  WriteSolutionFile(result.solution, dir);
  auto out = OpenForWrite(dir / "config.json");
  out << SerializeConfig(cfg);
}

void WriteAnalyticOutputs(const ExperimentConfig& cfg, const fs::path& dir) {
  fs::create_directories(dir);
  const auto states = std::make_shared<const Grid>(cfg.state_grid.Build());
  const AnalyticSolution sol = SolveAsymptotic(cfg.model);
  std::vector<double> policy(states->size());
  for (std::size_t i = 0; i < states->size(); ++i) {
    policy[i] = OptimalControl(sol, (*states)[i]);
  }
  const ProbVec density = StationaryDensityOnGrid(sol, states);
  WritePolicyCsv(dir / "policy.csv", states->points(), {}, policy);
  WriteDistributionCsv(dir / "distribution.csv", states->points(), {}, {},
                       density.mass());
  WriteSolutionFile(sol, dir);
}

std::array<NamedConfig, 3> ComparisonConfigs(const ExperimentConfig& base) {
  std::array<NamedConfig, 3> configs{{{"mfcg", base}, {"mfg", base}, {"mfc", base}}};
  configs[1].config.preset = Preset::kMfgDegenerate;
  configs[1].config.learn.omega_mu = configs[1].config.learn.omega_mut = 0.75;
  configs[2].config.preset = Preset::kMfcDegenerate;
  configs[2].config.learn.omega_mu = configs[2].config.learn.omega_mut = 0.15;
  return configs;
}

std::vector<ExperimentResult> RunComparison(const ExperimentConfig& base,
                                            const fs::path& dir) {
  std::vector<ExperimentResult> results;
  const auto configs = ComparisonConfigs(base);
  for (const auto& [name, cfg] : configs) {
    ExperimentConfig named = cfg;
    named.output_dir = (dir / name).string();
    results.push_back(RunExperiment(named));
    WriteOutputs(named, results.back(), dir / name);
  }

  const auto& ref = results.front();
  {
    auto out = OpenForWrite(dir / "comparison_policy.csv");
    out << "x,mfcg,mfg,mfc,analytic\n";
    for (std::size_t i = 0; i < ref.states.size(); ++i) {
      out << FormatDouble(ref.states[i]);
      for (const auto& r : results) out << ',' << FormatDouble(r.policy_avg[i]);
      out << ',' << FormatDouble(ref.analytic_policy[i]) << '\n';
    }
  }
  auto out = OpenForWrite(dir / "comparison_distribution.csv");
  out << "x,mfcg_mu,mfg_mu,mfc_mu,mfcg_mut,mfg_mut,mfc_mut,analytic\n";
  for (std::size_t i = 0; i < ref.states.size(); ++i) {
    out << FormatDouble(ref.states[i]);
    for (const auto& r : results) out << ',' << FormatDouble(r.mu_avg[i]);
    for (const auto& r : results) out << ',' << FormatDouble(r.mut_avg[i]);
    out << ',' << FormatDouble(ref.analytic_mass[i]) << '\n';
  }
  return results;
}

std::vector<NamedConfig> SweepConfigs(const ExperimentConfig& base) {
  std::vector<NamedConfig> configs;
  for (const auto& entry : ExplorationTable(base.learn.episodes)) {
    ExperimentConfig cfg = base;
    cfg.learn.exploration = entry.spec;
    cfg.learn.exploration.rate_floor = base.learn.exploration.rate_floor;
    configs.push_back({std::string(entry.name), std::move(cfg)});
  }
  return configs;
}

std::vector<ExperimentResult> RunSweep(const ExperimentConfig& base,
                                       const fs::path& dir) {
  const auto configs = SweepConfigs(base);
  std::vector<ExperimentResult> results;
  for (const auto& [name, cfg] : configs) {
    ExperimentConfig named = cfg;
    named.output_dir = (dir / name).string();
    results.push_back(RunExperiment(named));
    WriteOutputs(named, results.back(), dir / name);
  }

  std::size_t len = results.front().aggregate.episode.size();
  for (const auto& r : results) len = std::min(len, r.aggregate.episode.size());
  {
    auto out = OpenForWrite(dir / "sweep_mse.csv");
    out << "k";
    for (const auto& c : configs) out << ',' << c.name;
    out << '\n';
    for (std::size_t e = 0; e < len; ++e) {
      if (!EmitRow(e, len, base.thin)) continue;
      out << results.front().aggregate.episode[e];
      for (const auto& r : results) {
        out << ',' << FormatDouble(r.aggregate.mse_alpha.mean[e]);
      }
      out << '\n';
    }
  }
  auto out = OpenForWrite(dir / "sweep_summary.csv");
  out << "heuristic,final_mse_alpha_mean,final_mse_alpha_std,"
         "final_mse_mu_bar,final_mse_mut_bar\n";
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const AggregateTable& a = results[i].aggregate;
    const std::size_t last = a.episode.size() - 1;
    out << configs[i].name << ',' << FormatDouble(a.mse_alpha.mean[last]) << ','
        << FormatDouble(a.mse_alpha.std[last]) << ','
        << FormatDouble(a.mse_mu_bar[last]) << ','
        << FormatDouble(a.mse_mut_bar[last]) << '\n';
  }
  return results;
}

}  // namespace mfcg
