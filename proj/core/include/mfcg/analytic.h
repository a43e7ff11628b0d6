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

#ifndef MFCG_ANALYTIC_H_
#define MFCG_ANALYTIC_H_

#include <memory>
#include <stdexcept>

#include "mfcg/core_types.h"

namespace mfcg {

// The stationary linear-quadratic equilibrium. The value function is
// V(x) = gamma2 x^2 + gamma1 x + gamma0, the optimal feedback is
// -2 gamma2 x - gamma1, and the population settles to N(mu_bar, var).
struct AnalyticSolution {
  double gamma2 = 0.0;
  double gamma1 = 0.0;
  double gamma0 = 0.0;
  double mu_bar = 0.0;
  double var = 0.0;

  bool operator==(const AnalyticSolution&) const = default;
};

// Thrown when the equilibrium-mean denominator vanishes.
class SingularModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Positive root of 2 g^2 + (beta + 2 kappa) g - (c1 + ct1) = 0.
double Gamma2(const ModelParams& params);

// Closed-form stationary solution. gamma1 is evaluated from its quotient
// formula and cross-checked against the fixed point -2 gamma2 mu_bar.
AnalyticSolution SolveAsymptotic(const ModelParams& params);

// -2 gamma2 x - gamma1.
double OptimalControl(const AnalyticSolution& sol, double x);

// Bins N(mu_bar, var) onto the grid: entry j holds the mass of
// (x_{j-1}, x_j] with x_{-1} = -inf, and the right tail beyond the last
// point is folded into the last entry.
ProbVec StationaryDensityOnGrid(const AnalyticSolution& sol,
                                std::shared_ptr<const Grid> grid);

}  // namespace mfcg

#endif  // MFCG_ANALYTIC_H_
