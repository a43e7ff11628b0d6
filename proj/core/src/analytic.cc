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

#include "mfcg/analytic.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace mfcg {
namespace {

constexpr double kSingularTolerance = 1e-12;
constexpr double kGamma1AgreementTolerance = 1e-6;

// Standard normal CDF via erfc, accurate in both tails.
double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

double Gamma2(const ModelParams& p) {
  const double b = p.beta + 2.0 * p.kappa;
  return (-b + std::sqrt(b * b + 8.0 * (p.c1 + p.ct1))) / 4.0;
}

AnalyticSolution SolveAsymptotic(const ModelParams& p) {
  p.Validate();
  AnalyticSolution sol;
  sol.gamma2 = Gamma2(p);

  const double denom = p.c1 * (1.0 - p.c2) +
                       p.ct1 * (1.0 - p.ct2) * (1.0 - p.ct2) + p.ct3 -
                       p.kappa * sol.gamma2;
  const double scale = std::abs(p.c1) + std::abs(p.ct1) + std::abs(p.ct3) +
                       std::abs(p.kappa * sol.gamma2);
  if (std::abs(denom) <= kSingularTolerance * std::max(scale, 1.0)) {
    throw SingularModelError("equilibrium mean denominator is zero");
  }
  sol.mu_bar = p.ct3 * p.ct / denom;

  const double m = sol.mu_bar;
  sol.gamma1 = (2.0 * p.ct3 * (m - p.ct) -
                2.0 * p.ct1 * p.ct2 * (2.0 - p.ct2) * m - 2.0 * p.c1 * p.c2 * m) /
               (p.beta + p.kappa + 2.0 * sol.gamma2);
  const double gamma1_fixed_point = -2.0 * sol.gamma2 * m;
  const double spread = std::abs(sol.gamma1 - gamma1_fixed_point);
  if (spread > kGamma1AgreementTolerance *
                   std::max({std::abs(sol.gamma1),
                             std::abs(gamma1_fixed_point), 1e-300}) &&
      spread > 1e-12) {
    throw std::logic_error(
        "gamma1 quotient disagrees with the stationary fixed point");
  }

  sol.gamma0 = (-p.kappa * m - 0.5 * sol.gamma1 * sol.gamma1 +
                p.sigma * p.sigma * sol.gamma2 + p.c1 * p.c2 * p.c2 * m +
                p.ct1 * p.ct2 * p.ct2 * m + p.ct3 * (m - p.ct) * (m - p.ct)) /
               p.beta;
  sol.var = p.sigma * p.sigma / (2.0 * p.kappa + 4.0 * sol.gamma2);
  return sol;
}

double OptimalControl(const AnalyticSolution& sol, double x) {
  return -2.0 * sol.gamma2 * x - sol.gamma1;
}

ProbVec StationaryDensityOnGrid(const AnalyticSolution& sol,
                                std::shared_ptr<const Grid> grid) {
  const Grid& g = *grid;
  const std::size_t n = g.size();
  std::vector<double> mass(n, 0.0);

  if (!(sol.var > 0.0)) {
    // Degenerate law: everything lands in the bin (x_{j-1}, x_j] holding
    // the mean, or in the last bin past the right end.
    const auto points = g.points();
    const auto it = std::lower_bound(points.begin(), points.end(), sol.mu_bar);
    const std::size_t j =
        it == points.end() ? n - 1 : static_cast<std::size_t>(it - points.begin());
    mass[j] = 1.0;
    return ProbVec(std::move(grid), std::move(mass));
  }

  const double sd = std::sqrt(sol.var);
  double prev_cdf = 0.0;
  double assigned = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double cdf = NormalCdf((g[j] - sol.mu_bar) / sd);
    mass[j] = std::max(cdf - prev_cdf, 0.0);
    assigned += mass[j];
    prev_cdf = cdf;
  }
  mass[n - 1] = std::max(1.0 - assigned, 0.0);
  return ProbVec(std::move(grid), std::move(mass));
}

}  // namespace mfcg
