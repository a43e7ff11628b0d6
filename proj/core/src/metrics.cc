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

#include "mfcg/metrics.h"

#include <algorithm>
#include <cmath>

namespace mfcg {

double DistVariation(const ProbVec& p1, const ProbVec& p2) {
  MFCG_CHECK(p1.grid() == p2.grid(), "distributions live on different grids");
  double total = 0.0;
  for (std::size_t i = 0; i < p1.size(); ++i) total += std::abs(p1[i] - p2[i]);
  return total;
}

double QNorm11(const QTable& q1, const QTable& q2) {
  MFCG_CHECK(q1.num_states() == q2.num_states() &&
                 q1.num_actions() == q2.num_actions(),
             "Q tables have different shapes");
  const auto a = q1.values();
  const auto b = q2.values();
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total;
}

double MseControl(std::span<const double> policy, const AnalyticSolution& sol,
                  const ProbVec& weight) {
  MFCG_CHECK(policy.size() == weight.size(),
             "policy and weight sizes differ");
  const Grid& grid = weight.grid();
  double total = 0.0;
  for (std::size_t j = 0; j < policy.size(); ++j) {
    const double err = policy[j] - OptimalControl(sol, grid[j]);
    total += err * err * weight[j];
  }
  return total;
}

double MseMean(std::span<const double> observed, double target) {
  MFCG_CHECK(!observed.empty(), "no observations");
  double total = 0.0;
  for (double v : observed) total += (v - target) * (v - target);
  return total / static_cast<double>(observed.size());
}

RunAggregate Aggregate(const std::vector<std::vector<double>>& traces) {
  MFCG_CHECK(!traces.empty(), "no traces to aggregate");
  const std::size_t len = traces.front().size();
  for (const auto& t : traces) {
    MFCG_CHECK(t.size() == len, "traces have different lengths");
  }
  RunAggregate agg;
  agg.runs = traces.size();
  agg.mean.assign(len, 0.0);
  agg.std.assign(len, 0.0);
  const double runs = static_cast<double>(traces.size());
  for (std::size_t k = 0; k < len; ++k) {
    double sum = 0.0;
    for (const auto& t : traces) sum += t[k];
    const double mean = sum / runs;
    double sq = 0.0;
    for (const auto& t : traces) sq += (t[k] - mean) * (t[k] - mean);
    agg.mean[k] = mean;
    agg.std[k] = std::sqrt(sq / runs);
  }
  return agg;
}

}  // namespace mfcg
