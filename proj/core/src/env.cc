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

#include "mfcg/env.h"

#include <cmath>
#include <utility>

namespace mfcg {
namespace {
constexpr std::uint64_t kEnvStream = 0x656e76;  // "env"
}  // namespace

double RunningCost(const ModelParams& params, double x, double a,
                   double mu_bar, double mut_bar) {
  const double global_gap = x - params.c2 * mu_bar;
  const double local_gap = x - params.ct2 * mut_bar;
  const double target_gap = mut_bar - params.ct;
  return 0.5 * a * a + params.c1 * global_gap * global_gap +
         params.ct1 * local_gap * local_gap +
         params.ct3 * target_gap * target_gap;
}

BankLendingEnv::BankLendingEnv(ModelParams params,
                               std::shared_ptr<const Grid> states,
                               std::shared_ptr<const Grid> actions, double dt,
                               std::uint64_t seed, DriftMean drift_mean)
    : params_(params),
      states_(std::move(states)),
      actions_(std::move(actions)),
      dt_(dt),
      noise_scale_(params.sigma * std::sqrt(dt)),
      drift_mean_(drift_mean),
      rng_(MakeStream(seed, kEnvStream)) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(params.sigma >= 0.0)) throw ConfigError("model.sigma must be >= 0");
  if (states_ == nullptr || actions_ == nullptr) {
    throw ConfigError("environment needs state and action grids");
  }
}

double BankLendingEnv::Propose(std::size_t x_idx, double a, double mf_mean) {
  MFCG_CHECK(x_idx < states_->size(), "state index out of range");
  const double x = (*states_)[x_idx];
  const double drift = params_.kappa * (mf_mean - x) + a;
  // Always consume one normal so streams stay aligned when sigma == 0.
  const double xi = normal_(rng_);
  return x + drift * dt_ + noise_scale_ * xi;
}

std::size_t BankLendingEnv::Step(std::size_t x_idx, double a, double mf_mean) {
  return Snap(*states_, Propose(x_idx, a, mf_mean));
}

Transition BankLendingEnv::Sample(std::size_t x, std::size_t a,
                                  double global_mean, double local_mean) {
  MFCG_CHECK(a < actions_->size(), "action index out of range");
  const double action = (*actions_)[a];
  const double mf_mean =
      drift_mean_ == DriftMean::kLocal ? local_mean : global_mean;
  const std::size_t next = Step(x, action, mf_mean);
  return {next, RunningCost(params_, (*states_)[x], action, global_mean,
                            local_mean)};
}

std::size_t SampleInitial(const ProbVec& dist, Rng& rng) {
  const auto mass = dist.mass();
  std::discrete_distribution<std::size_t> pick(mass.begin(), mass.end());
  return pick(rng);
}

}  // namespace mfcg
