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

#ifndef MFCG_METRICS_H_
#define MFCG_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "mfcg/analytic.h"
#include "mfcg/core_types.h"

namespace mfcg {

// sum_i |p1[i] - p2[i]|. This is the L1 distance, twice the usual total
// variation, which is the scale the convergence plots are drawn on.
double DistVariation(const ProbVec& p1, const ProbVec& p2);

// Entrywise absolute difference sum of two equally shaped Q tables.
double QNorm11(const QTable& q1, const QTable& q2);

// Control error weighted by `weight`:
//   sum_j (policy[j] - alpha_hat(x_j))^2 weight[j].
double MseControl(std::span<const double> policy, const AnalyticSolution& sol,
                  const ProbVec& weight);

// Mean squared deviation of the observations from `target`.
double MseMean(std::span<const double> observed, double target);

// Per-episode cross-run statistics of one scalar metric.
struct RunAggregate {
  std::vector<double> mean;
  std::vector<double> std;  // population standard deviation
  std::size_t runs = 0;
};

// traces[r][k] is the value of run r at episode k. All traces must have the
// same length.
RunAggregate Aggregate(const std::vector<std::vector<double>>& traces);

}  // namespace mfcg

#endif  // MFCG_METRICS_H_
