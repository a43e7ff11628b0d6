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

#ifndef MFCG_LEARNER_H_
#define MFCG_LEARNER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "mfcg/core_types.h"
#include "mfcg/env.h"
#include "mfcg/exploration.h"

namespace mfcg {

// Per-step discount used in the Q target.
enum class DiscountMode {
  kExpBetaDt,    // gamma = exp(-beta * dt)
  kLiteralBeta,  // gamma = beta; only meaningful for beta < 1
};

struct LearnConfig {
  double omega_q = 0.55;
  double omega_mu = 0.75;   // global distribution (slowest)
  double omega_mut = 0.15;  // local distribution (fastest)
  std::int64_t horizon_steps = 320;
  double dt = 1.0 / 16.0;
  std::int64_t episodes = 50000;
  DiscountMode discount_mode = DiscountMode::kExpBetaDt;
  bool stage_cost_scaled_by_dt = true;
  // Break-rule tolerances. All zero disables early stopping.
  double tol_q = 0.0;
  double tol_mu = 0.0;
  double tol_mut = 0.0;
  // Consecutive episodes the tolerances must hold before stopping.
  std::int64_t break_patience = 10;
  std::uint64_t seed = 0;
  ExplorationSpec exploration;

  // Generic validity. `require_three_timescales` additionally enforces
  // omega_mu > omega_q > omega_mut and omega_q in (0.5, 1).
  void Validate(bool require_three_timescales = false) const;

  bool operator==(const LearnConfig&) const = default;
};

std::string_view ToString(DiscountMode mode);
DiscountMode ParseDiscountMode(std::string_view s);

// Discount factor per step for `beta` under cfg.discount_mode.
double StepDiscount(const LearnConfig& cfg, double beta);

// One row of the training trace.
struct EpisodeRecord {
  std::int64_t episode = 0;    // 1-based
  double q_delta = 0.0;        // ||Q^k - Q^{k-1}||_{1,1}
  double mu_delta = 0.0;       // L1 change of the terminal global estimate
  double mut_delta = 0.0;      // L1 change of the terminal local estimate
  double mu_bar = 0.0;         // mean of the terminal global estimate
  double mut_bar = 0.0;        // mean of the terminal local estimate
  double elapsed_seconds = 0.0;

  bool operator==(const EpisodeRecord& o) const {
    return episode == o.episode && q_delta == o.q_delta &&
           mu_delta == o.mu_delta && mut_delta == o.mut_delta &&
           mu_bar == o.mu_bar && mut_bar == o.mut_bar;
  }
};

struct LearnerState {
  QTable q;
  std::vector<ProbVec> mu;   // global estimates, one per time step 0..T
  std::vector<ProbVec> mut;  // local estimates, one per time step 0..T
  std::int64_t episode = 0;  // episodes completed
  std::vector<EpisodeRecord> trace;
};

// 1 / (1 + visits)^omega_q
double RateQ(std::uint64_t visits, double omega_q);

// 1 / (1 + k)^omega
double RateDist(std::int64_t k, double omega);

// Robbins-Monro Q update of the single cell (x, a):
//   Q(x,a) += rho (cost + gamma min_a' Q(next, a') - Q(x,a)),
// rho = RateQ(visits(x, a), omega_q); then visits(x, a) += 1.
void UpdateQ(QTable& q, std::size_t x, std::size_t a, double cost,
             std::size_t next_x, double gamma, double omega_q);

// Action value at the argmin of each Q row (lowest index on ties).
std::vector<double> GreedyPolicy(const QTable& q, const Grid& action_grid);

// Called after every episode with the updated state.
using EpisodeObserver = std::function<void(const LearnerState&)>;

// Three-timescale mean-field Q-learning on an infinite-horizon problem.
//
// Each episode draws X_0 from the previous terminal global estimate, then
// for n = 0..T picks an action from the current Q row, moves the global and
// local estimates at step n toward the visited state, queries the
// environment with the updated means and performs one Q update. Global
// estimates move at rate (1+k)^-omega_mu, local ones at (1+k)^-omega_mut,
// where k is the 1-based episode number.
//
// Deterministic for a fixed cfg.seed and environment seed.
LearnerState RunTraining(Environment& env, const LearnConfig& cfg,
                         const EpisodeObserver& observer = {});

}  // namespace mfcg

#endif  // MFCG_LEARNER_H_
