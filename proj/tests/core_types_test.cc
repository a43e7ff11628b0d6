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

#include "mfcg/core_types.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <vector>

namespace mfcg {
namespace {

std::shared_ptr<const Grid> StateGrid() {
  return std::make_shared<const Grid>(MakeGrid(-1.5, 4.5, 0.25));
}

// Reference nearest-point search: scan every point, prefer the larger point
// on exact ties.
std::size_t BruteForceSnap(const Grid& grid, double x) {
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = std::abs(grid[i] - x);
    if (d <= best_dist) {
      best = i;
      best_dist = d;
    }
  }
  return best;
}

TEST(MakeGrid, StateGridHas25Points) {
  const Grid g = MakeGrid(-1.5, 4.5, 0.25);
  EXPECT_EQ(g.size(), 25u);
  EXPECT_DOUBLE_EQ(g.lo(), -1.5);
  EXPECT_NEAR(g.hi(), 4.5, 1e-12);
}

TEST(MakeGrid, ActionGridHas49Points) {
  const Grid g = MakeGrid(-6.0, 6.0, 0.25);
  EXPECT_EQ(g.size(), 49u);
  EXPECT_NEAR(g.hi(), 6.0, 1e-12);
}

TEST(MakeGrid, TwoPointGrid) {
  const Grid g = MakeGrid(0.0, 1.0, 1.0);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_EQ(g[1], 1.0);
}

TEST(MakeGrid, PointsAreEquallySpaced) {
  const Grid g = MakeGrid(-6.0, 6.0, 0.25);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_DOUBLE_EQ(g[i], -6.0 + static_cast<double>(i) * 0.25);
  }
}

TEST(MakeGrid, RejectsBadSpecs) {
  EXPECT_THROW(MakeGrid(0.0, 1.0, 0.3), ConfigError);   // non-integral span
  EXPECT_THROW(MakeGrid(0.0, 1.0, 0.0), ConfigError);   // zero step
  EXPECT_THROW(MakeGrid(0.0, 1.0, -0.5), ConfigError);  // negative step
  EXPECT_THROW(MakeGrid(1.0, 1.0, 0.5), ConfigError);   // empty span
}

TEST(Snap, NearestPoint) {
  const Grid g = MakeGrid(-1.5, 4.5, 0.25);
  EXPECT_DOUBLE_EQ(g[Snap(g, 1.93)], 2.0);
}

TEST(Snap, ClampsOutOfRange) {
  const Grid g = MakeGrid(-1.5, 4.5, 0.25);
  EXPECT_EQ(Snap(g, -100.0), 0u);
  EXPECT_EQ(Snap(g, 100.0), g.size() - 1);
}

TEST(Snap, MidpointRoundsUp) {
  const Grid g = MakeGrid(-1.5, 4.5, 0.25);
  EXPECT_DOUBLE_EQ(g[Snap(g, 1.875)], 2.0);
  EXPECT_DOUBLE_EQ(g[Snap(g, 0.125)], 0.25);
}

TEST(Snap, IdempotentOnGridPoints) {
  const Grid g = MakeGrid(-6.0, 6.0, 0.25);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(Snap(g, g[i]), i);
}

TEST(Snap, MatchesBruteForceOnRandomInputs) {
  const Grid g = MakeGrid(-1.5, 4.5, 0.25);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 6.0);
  for (int i = 0; i < 20000; ++i) {
    const double x = u(rng);
    ASSERT_EQ(Snap(g, x), BruteForceSnap(g, x)) << "x=" << x;
  }
  // Exact midpoints too.
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double mid = g[i] + 0.125;
    EXPECT_EQ(Snap(g, mid), BruteForceSnap(g, mid));
  }
}

TEST(ProbVec, RejectsInvalidMass) {
  auto g = std::make_shared<const Grid>(MakeGrid(0.0, 1.0, 1.0));
  EXPECT_THROW(ProbVec(g, {0.7, 0.7}), ConfigError);
  EXPECT_THROW(ProbVec(g, {1.2, -0.2}), ConfigError);
  EXPECT_THROW(ProbVec(g, {1.0}), ConfigError);
  EXPECT_NO_THROW(ProbVec(g, {0.3, 0.7}));
}

TEST(Mean, PointMass) {
  auto g = StateGrid();
  EXPECT_DOUBLE_EQ(Mean(ProbVec::PointMass(g, Snap(*g, 2.0))), 2.0);
}

TEST(Mean, UniformTwoPoint) {
  auto g = std::make_shared<const Grid>(MakeGrid(0.0, 1.0, 1.0));
  EXPECT_DOUBLE_EQ(Mean(ProbVec::Uniform(g)), 0.5);
}

TEST(Mean, UniformStateGrid) {
  EXPECT_NEAR(Mean(ProbVec::Uniform(StateGrid())), 1.5, 1e-12);
}

TEST(Mean, LinearUnderConvexCombination) {
  auto g = StateGrid();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(g->size()), b(g->size());
    double sa = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
      sa += a[i];
      sb += b[i];
    }
    for (std::size_t i = 0; i < g->size(); ++i) {
      a[i] /= sa;
      b[i] /= sb;
    }
    const double t = u(rng);
    std::vector<double> mix(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) {
      mix[i] = t * a[i] + (1.0 - t) * b[i];
    }
    const ProbVec pa(g, a), pb(g, b), pm(g, mix);
    EXPECT_NEAR(Mean(pm), t * Mean(pa) + (1.0 - t) * Mean(pb), 1e-12);
  }
}

TEST(QTable, StartsAtZero) {
  const QTable q(25, 49);
  for (double v : q.values()) EXPECT_EQ(v, 0.0);
  for (auto n : q.visit_counts()) EXPECT_EQ(n, 0u);
  EXPECT_EQ(q.row(3).size(), 49u);
}

TEST(ModelParams, Validation) {
  ModelParams p;
  EXPECT_NO_THROW(p.Validate());
  p.sigma = 0.0;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = ModelParams{};
  p.kappa = -1.0;
  EXPECT_THROW(p.Validate(), ConfigError);
  p = ModelParams{};
  p.c1 = 0.0;
  p.ct1 = 0.0;
  EXPECT_THROW(p.Validate(), ConfigError);
}

}  // namespace
}  // namespace mfcg
