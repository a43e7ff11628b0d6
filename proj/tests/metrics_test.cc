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

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

namespace mfcg {
namespace {

std::shared_ptr<const Grid> States() {
  return std::make_shared<const Grid>(MakeGrid(-1.5, 4.5, 0.25));
}

ProbVec RandomProb(const std::shared_ptr<const Grid>& g, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> m(g->size());
  double s = 0.0;
  for (double& v : m) s += v = e(rng);
  for (double& v : m) v /= s;
  return ProbVec(g, std::move(m));
}

TEST(DistVariation, Examples) {
  auto g = States();
  const ProbVec u = ProbVec::Uniform(g);
  EXPECT_EQ(DistVariation(u, u), 0.0);
  EXPECT_DOUBLE_EQ(
      DistVariation(ProbVec::PointMass(g, 0), ProbVec::PointMass(g, 5)), 2.0);
  auto two = std::make_shared<const Grid>(MakeGrid(0.0, 1.0, 1.0));
  EXPECT_DOUBLE_EQ(
      DistVariation(ProbVec(two, {0.75, 0.25}), ProbVec::Uniform(two)), 0.5);
}

TEST(DistVariation, GridMismatch) {
  auto two = std::make_shared<const Grid>(MakeGrid(0.0, 1.0, 1.0));
  auto other = std::make_shared<const Grid>(MakeGrid(0.0, 2.0, 2.0));
  EXPECT_THROW(DistVariation(ProbVec::Uniform(two), ProbVec::Uniform(other)),
               ContractViolation);
}

TEST(DistVariation, IsAMetric) {
  auto g = States();
  std::mt19937_64 rng(31);
  for (int i = 0; i < 500; ++i) {
    const ProbVec a = RandomProb(g, rng), b = RandomProb(g, rng),
                  c = RandomProb(g, rng);
    const double ab = DistVariation(a, b);
    EXPECT_EQ(ab, DistVariation(b, a));
    EXPECT_GT(ab, 0.0);
    EXPECT_LE(ab, 2.0 + 1e-12);
    EXPECT_LE(ab, DistVariation(a, c) + DistVariation(c, b) + 1e-12);
  }
}

TEST(QNorm11, Examples) {
  QTable a(2, 2), b(2, 2);
  EXPECT_EQ(QNorm11(a, b), 0.0);
  b.value(1, 1) = 3.0;
  EXPECT_EQ(QNorm11(a, b), 3.0);
  b.value(0, 0) = 1.0;
  b.value(0, 1) = -1.0;
  b.value(1, 0) = 2.0;
  b.value(1, 1) = 0.0;
  EXPECT_EQ(QNorm11(a, b), 4.0);
  EXPECT_THROW(QNorm11(a, QTable(2, 3)), ContractViolation);
}

TEST(MseControl, Examples) {
  const AnalyticSolution sol = SolveAsymptotic(ModelParams{});
  auto g = States();
  const ProbVec w = StationaryDensityOnGrid(sol, g);
  std::vector<double> exact(g->size()), shifted(g->size()), snapped(g->size());
  const Grid actions = MakeGrid(-6.0, 6.0, 0.25);
  for (std::size_t j = 0; j < g->size(); ++j) {
    exact[j] = OptimalControl(sol, (*g)[j]);
    shifted[j] = exact[j] + 1.0;
    snapped[j] = actions[Snap(actions, exact[j])];
  }
  EXPECT_NEAR(MseControl(exact, sol, w), 0.0, 1e-28);
  EXPECT_NEAR(MseControl(shifted, sol, w), 1.0, 1e-12);
  EXPECT_LE(MseControl(snapped, sol, w), 0.015625);
}

TEST(MseControl, QuadraticInErrorScale) {
  const AnalyticSolution sol = SolveAsymptotic(ModelParams{});
  auto g = States();
  const ProbVec w = StationaryDensityOnGrid(sol, g);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> err(g->size()), p1(g->size()), p3(g->size());
  double oracle = 0.0;
  for (std::size_t j = 0; j < g->size(); ++j) {
    err[j] = n(rng);
    p1[j] = OptimalControl(sol, (*g)[j]) + err[j];
    p3[j] = OptimalControl(sol, (*g)[j]) + 3.0 * err[j];
    oracle += w[j] * err[j] * err[j];
  }
  EXPECT_NEAR(MseControl(p1, sol, w), oracle, 1e-12);
  EXPECT_NEAR(MseControl(p3, sol, w), 9.0 * oracle, 1e-11);
}

TEST(MseMean, Examples) {
  const double mu = 1.9280737204873999;
  EXPECT_EQ(MseMean(std::vector<double>{mu, mu, mu}, mu), 0.0);
  EXPECT_NEAR(MseMean(std::vector<double>{mu + 0.1}, mu), 0.01, 1e-12);
  EXPECT_NEAR(MseMean(std::vector<double>{mu + 0.1, mu - 0.1}, mu), 0.01,
              1e-12);
  EXPECT_THROW(MseMean(std::vector<double>{}, mu), ContractViolation);
}

TEST(Aggregate, Examples) {
  const RunAggregate single = Aggregate({{1.0, 2.0, 3.0}});
  EXPECT_EQ(single.mean, (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(single.std, (std::vector<double>{0.0, 0.0, 0.0}));
  EXPECT_EQ(single.runs, 1u);

  const RunAggregate two = Aggregate({{0.0, 0.0}, {2.0, 2.0}});
  EXPECT_EQ(two.mean, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(two.std, (std::vector<double>{1.0, 1.0}));

  const RunAggregate same = Aggregate({{4.0, 5.0}, {4.0, 5.0}, {4.0, 5.0}});
  EXPECT_EQ(same.std, (std::vector<double>{0.0, 0.0}));

  EXPECT_THROW(Aggregate({{1.0}, {1.0, 2.0}}), ContractViolation);
  EXPECT_THROW(Aggregate({}), ContractViolation);
}

}  // namespace
}  // namespace mfcg
