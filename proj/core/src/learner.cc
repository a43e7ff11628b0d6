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

#include "mfcg/learner.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "mfcg/metrics.h"

namespace mfcg {
namespace {
constexpr std::uint64_t kLearnerStream = 0x6c726e;  // "lrn"
}  // namespace

ProbVec UpdateDistribution(ProbVec p, std::size_t x_idx, double rho) {
  MFCG_CHECK(rho >= 0.0 && rho <= 1.0, "distribution rate outside [0, 1]");
  MFCG_CHECK(x_idx < p.mass_.size(), "state index out of range");
  for (std::size_t i = 0; i < p.mass_.size(); ++i) {
    const double target = i == x_idx ? 1.0 : 0.0;
    p.mass_[i] += rho * (target - p.mass_[i]);
  }
  return p;
}

void LearnConfig::Validate(bool require_three_timescales) const {
  for (auto [name, w] : {std::pair{"learn.omega_q", omega_q},
                         std::pair{"learn.omega_mu", omega_mu},
                         std::pair{"learn.omega_mut", omega_mut}}) {
    if (!(w > 0.0 && w < 1.0)) {
      throw ConfigError(std::string(name) + " must lie in (0, 1)");
    }
  }
  if (!(dt > 0.0)) throw ConfigError("learn.dt must be positive");
  if (episodes < 1) throw ConfigError("learn.episodes must be >= 1");
  if (horizon_steps < 1) throw ConfigError("learn.horizon_steps must be >= 1");
  if (!(tol_q >= 0.0 && tol_mu >= 0.0 && tol_mut >= 0.0)) {
    throw ConfigError("learn.tol_* must be non-negative");
  }
  if (break_patience < 1) {
    throw ConfigError("learn.break_patience must be >= 1");
  }
  if (require_three_timescales) {
    if (!(omega_mu > omega_q && omega_q > omega_mut)) {
      throw ConfigError(
          "learn.omega_*: three-timescale regime needs omega_mu > omega_q > "
          "omega_mut");
    }
    if (!(omega_q > 0.5)) {
      throw ConfigError("learn.omega_q must lie in (0.5, 1)");
    }
  }
  exploration.Validate();
}

std::string_view ToString(DiscountMode mode) {
  return mode == DiscountMode::kExpBetaDt ? "exp_beta_dt" : "literal_beta";
}

DiscountMode ParseDiscountMode(std::string_view s) {
  if (s == "exp_beta_dt") return DiscountMode::kExpBetaDt;
  if (s == "literal_beta") return DiscountMode::kLiteralBeta;
  throw ConfigError("learn.discount_mode: unknown value '" + std::string(s) +
                    "'");
}

double StepDiscount(const LearnConfig& cfg, double beta) {
  const double gamma = cfg.discount_mode == DiscountMode::kExpBetaDt
                           ? std::exp(-beta * cfg.dt)
                           : beta;
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ConfigError("learn.discount_mode yields a step discount outside (0, 1)");
  }
  return gamma;
}

double RateQ(std::uint64_t visits, double omega_q) {
  return std::pow(1.0 + static_cast<double>(visits), -omega_q);
}

double RateDist(std::int64_t k, double omega) {
  MFCG_CHECK(k >= 0, "negative episode index");
  return std::pow(1.0 + static_cast<double>(k), -omega);
}

void UpdateQ(QTable& q, std::size_t x, std::size_t a, double cost,
             std::size_t next_x, double gamma, double omega_q) {
  MFCG_CHECK(x < q.num_states() && next_x < q.num_states(),
             "state index out of range");
  MFCG_CHECK(a < q.num_actions(), "action index out of range");
  const auto next_row = q.row(next_x);
  const double best_next = *std::min_element(next_row.begin(), next_row.end());
  const double rho = RateQ(q.visits(x, a), omega_q);
  double& cell = q.value(x, a);
  cell += rho * (cost + gamma * best_next - cell);
  ++q.visits(x, a);
}

std::vector<double> GreedyPolicy(const QTable& q, const Grid& action_grid) {
  MFCG_CHECK(q.num_actions() == action_grid.size(),
             "action grid does not match the Q table");
  std::vector<double> policy(q.num_states());
  for (std::size_t x = 0; x < q.num_states(); ++x) {
    policy[x] = action_grid[ArgMin(q.row(x))];
  }
  return policy;
}

LearnerState RunTraining(Environment& env, const LearnConfig& cfg,
                         const EpisodeObserver& observer) {
  cfg.Validate();
  const auto state_grid = std::make_shared<const Grid>(env.states());
  const std::size_t num_actions = env.actions().size();
  const std::size_t steps = static_cast<std::size_t>(cfg.horizon_steps) + 1;
  const double gamma = StepDiscount(cfg, env.discount_rate());
  const double cost_scale = cfg.stage_cost_scaled_by_dt ? cfg.dt : 1.0;
  const bool break_enabled =
      cfg.tol_q > 0.0 || cfg.tol_mu > 0.0 || cfg.tol_mut > 0.0;

  LearnerState state{QTable(state_grid->size(), num_actions),
                     std::vector<ProbVec>(steps, ProbVec::Uniform(state_grid)),
                     std::vector<ProbVec>(steps, ProbVec::Uniform(state_grid)),
                     0,
                     {}};
  state.trace.reserve(static_cast<std::size_t>(cfg.episodes));

  Rng rng = MakeStream(cfg.seed, kLearnerStream);
  const auto start = std::chrono::steady_clock::now();
  std::int64_t calm_streak = 0;

  for (std::int64_t e = 0; e < cfg.episodes; ++e) {
    const std::int64_t k = e + 1;
    const ExplorationRates rates = RateAt(cfg.exploration, e);
    const double rho_mu = RateDist(k, cfg.omega_mu);
    const double rho_mut = RateDist(k, cfg.omega_mut);

    const QTable q_prev = state.q;
    const ProbVec mu_prev = state.mu.back();
    const ProbVec mut_prev = state.mut.back();

    std::size_t x = SampleInitial(mu_prev, rng);
    for (std::size_t n = 0; n < steps; ++n) {
      const std::size_t a = SelectAction(state.q.row(x), rates.eps, rates.tau,
                                         cfg.exploration.kind, rng);
      state.mu[n] = UpdateDistribution(std::move(state.mu[n]), x, rho_mu);
      state.mut[n] = UpdateDistribution(std::move(state.mut[n]), x, rho_mut);
      const Transition t =
          env.Sample(x, a, Mean(state.mu[n]), Mean(state.mut[n]));
      UpdateQ(state.q, x, a, t.cost * cost_scale, t.next_state, gamma,
              cfg.omega_q);
      x = t.next_state;
    }

    EpisodeRecord rec;
    rec.episode = k;
    rec.q_delta = QNorm11(state.q, q_prev);
    rec.mu_delta = DistVariation(state.mu.back(), mu_prev);
    rec.mut_delta = DistVariation(state.mut.back(), mut_prev);
    rec.mu_bar = Mean(state.mu.back());
    rec.mut_bar = Mean(state.mut.back());
    rec.elapsed_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    state.trace.push_back(rec);
    state.episode = k;
    if (observer) observer(state);

    if (break_enabled) {
      const bool calm = rec.q_delta <= cfg.tol_q &&
                        rec.mu_delta <= cfg.tol_mu &&
                        rec.mut_delta <= cfg.tol_mut;
      calm_streak = calm ? calm_streak + 1 : 0;
      if (calm_streak >= cfg.break_patience) break;
    }
  }
  return state;
}

}  // namespace mfcg
