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

#ifndef MFCG_ENV_H_
#define MFCG_ENV_H_

#include <cstddef>
#include <cstdint>
#include <memory>

#include "mfcg/core_types.h"

namespace mfcg {

// Outcome of one environment interaction.
struct Transition {
  std::size_t next_state;
  double cost;
};

// What the learner sees: an opaque sampler of (next state, cost). Model
// constants stay behind this interface.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const Grid& states() const = 0;
  virtual const Grid& actions() const = 0;

  // Continuous-time discount rate of the objective being minimized.
  virtual double discount_rate() const = 0;

  // Samples a transition from state index `x` under action index `a` given
  // the current means of the global and local distributions.
  virtual Transition Sample(std::size_t x, std::size_t a, double global_mean,
                            double local_mean) = 0;
};

// Which population mean enters the drift of the reserve dynamics.
enum class DriftMean { kLocal, kGlobal };

// 0.5 a^2 + c1 (x - c2 mu_bar)^2 + ct1 (x - ct2 mut_bar)^2
//   + ct3 (mut_bar - ct)^2
double RunningCost(const ModelParams& params, double x, double a,
                   double mu_bar, double mut_bar);

// Euler-Maruyama discretization of the controlled mean-reverting reserve
// process, projected back onto the state grid after every step:
//
//   x' = snap(x + [kappa (m - x) + a] dt + sigma sqrt(dt) xi),  xi ~ N(0, 1)
//
// Excursions past the truncated grid are absorbed at the boundary points.
class BankLendingEnv final : public Environment {
 public:
  BankLendingEnv(ModelParams params, std::shared_ptr<const Grid> states,
                 std::shared_ptr<const Grid> actions, double dt,
                 std::uint64_t seed, DriftMean drift_mean = DriftMean::kLocal);

  const Grid& states() const override { return *states_; }
  const Grid& actions() const override { return *actions_; }
  double discount_rate() const override { return params_.beta; }
  const ModelParams& params() const { return params_; }
  double dt() const { return dt_; }

  // Continuous Euler-Maruyama proposal before grid projection. Consumes one
  // normal draw.
  double Propose(std::size_t x_idx, double a, double mf_mean);

  // Next state index for real-valued action `a` and drift mean `mf_mean`:
  // Snap(states(), Propose(x_idx, a, mf_mean)).
  std::size_t Step(std::size_t x_idx, double a, double mf_mean);

  Transition Sample(std::size_t x, std::size_t a, double global_mean,
                    double local_mean) override;

 private:
  ModelParams params_;
  std::shared_ptr<const Grid> states_;
  std::shared_ptr<const Grid> actions_;
  double dt_;
  double noise_scale_;
  DriftMean drift_mean_;
  Rng rng_;
  std::normal_distribution<double> normal_;
};

// Draws an index with probabilities dist.mass().
std::size_t SampleInitial(const ProbVec& dist, Rng& rng);

}  // namespace mfcg

#endif  // MFCG_ENV_H_
