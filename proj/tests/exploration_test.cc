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

#include "mfcg/exploration.h"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace mfcg {
namespace {

constexpr std::int64_t kK = 50000;

// Three-sigma binomial band for `n` draws at probability `p`.
double Band(double p, int n) { return 3.0 * std::sqrt(p * (1.0 - p) / n); }

ExplorationSpec Unfloored(std::string_view name) {
  ExplorationSpec s = ExplorationByName(name, kK);
  s.rate_floor = 0.0;
  return s;
}

TEST(Table, NineDistinctEntries) {
  const auto table = ExplorationTable(kK);
  EXPECT_EQ(table.size(), 9u);
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      EXPECT_NE(table[i].name, table[j].name);
      EXPECT_FALSE(table[i].spec == table[j].spec);
    }
  }
}

TEST(Table, EpsilonColumnAtCheckpoints) {
  for (std::int64_t k : {std::int64_t{0}, kK / 2, kK - 1}) {
    const double kd = static_cast<double>(k);
    EXPECT_EQ(RateAt(Unfloored("eps_con"), k).eps, 0.01);
    EXPECT_DOUBLE_EQ(RateAt(Unfloored("eps_lin"), k).eps,
                     0.05 * (kK - kd) / kK);
    EXPECT_DOUBLE_EQ(RateAt(Unfloored("eps_exp"), k).eps,
                     std::pow(0.9995, kd));
  }
}

TEST(Table, TemperatureColumnsAtCheckpoints) {
  for (std::int64_t k : {std::int64_t{0}, kK / 2, kK - 1}) {
    const double kd = static_cast<double>(k);
    for (const char* prefix : {"boltz", "mb"}) {
      const std::string p(prefix);
      EXPECT_EQ(RateAt(Unfloored(p + "_con"), k).tau, 5.0);
      EXPECT_DOUBLE_EQ(RateAt(Unfloored(p + "_lin"), k).tau,
                       5.0 * (kK - kd) / kK);
      EXPECT_DOUBLE_EQ(RateAt(Unfloored(p + "_exp"), k).tau,
                       5.0 * std::pow(0.9999, kd));
    }
    for (const char* name : {"mb_con", "mb_lin", "mb_exp"}) {
      EXPECT_EQ(RateAt(Unfloored(name), k).eps, 0.05);
    }
  }
}

TEST(Table, FirstEpisodeValues) {
  EXPECT_EQ(RateAt(ExplorationByName("eps_lin", kK), 0).eps, 0.05);
  EXPECT_EQ(RateAt(ExplorationByName("eps_exp", kK), 0).eps, 1.0);
  EXPECT_EQ(RateAt(ExplorationByName("boltz_exp", kK), 0).tau, 5.0);
}

TEST(Table, ExponentialFloor) {
  const ExplorationSpec s = ExplorationByName("eps_exp", kK);
  // 0.9995^49999 is about 1.4e-11, far below the floor.
  EXPECT_EQ(RateAt(s, kK - 1).eps, s.rate_floor);
}

TEST(Table, UnknownName) {
  EXPECT_THROW(ExplorationByName("eps_quad", kK), ConfigError);
}

TEST(RateAt, OutOfRangeEpisode) {
  const ExplorationSpec s = ExplorationByName("eps_con", 10);
  EXPECT_THROW(RateAt(s, 10), ContractViolation);
  EXPECT_THROW(RateAt(s, -1), ContractViolation);
}

TEST(SelectAction, GreedyIsArgMin) {
  Rng rng = MakeStream(1, 0);
  const std::array<double, 3> row{3.0, 1.0, 2.0};
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(SelectAction(row, 0.0, 5.0, ExplorationKind::kEpsGreedy, rng),
              1u);
  }
}

TEST(SelectAction, TiesGoToLowestIndex) {
  Rng rng = MakeStream(1, 0);
  const std::array<double, 4> row{2.0, 1.0, 1.0, 1.0};
  EXPECT_EQ(SelectAction(row, 0.0, 5.0, ExplorationKind::kEpsGreedy, rng), 1u);
  EXPECT_EQ(SelectAction(row, 0.0, 5.0, ExplorationKind::kMaxBoltzmann, rng),
            1u);
}

TEST(SelectAction, EpsOneIsUniform) {
  Rng rng = MakeStream(2, 0);
  const std::vector<double> row{0.0, 10.0, 20.0, 30.0};
  constexpr int kDraws = 400000;
  std::array<int, 4> counts{};
  for (int i = 0; i < kDraws; ++i) {
    ++counts[SelectAction(row, 1.0, 5.0, ExplorationKind::kEpsGreedy, rng)];
  }
  for (int c : counts) {
    EXPECT_NEAR(static_cast<double>(c) / kDraws, 0.25, Band(0.25, kDraws));
  }
}

TEST(SelectAction, BoltzmannEqualRowIsUniform) {
  Rng rng = MakeStream(3, 0);
  const std::vector<double> row(5, 7.0);
  constexpr int kDraws = 1000000;
  std::array<int, 5> counts{};
  for (int i = 0; i < kDraws; ++i) {
    ++counts[SelectAction(row, 0.0, 5.0, ExplorationKind::kBoltzmann, rng)];
  }
  for (int c : counts) {
    EXPECT_NEAR(static_cast<double>(c) / kDraws, 0.2, Band(0.2, kDraws));
  }
}

TEST(SelectAction, BoltzmannTwoToOne) {
  Rng rng = MakeStream(4, 0);
  const double tau = 5.0;
  const std::array<double, 2> row{0.0, tau * std::numbers::ln2};
  constexpr int kDraws = 1000000;
  int first = 0;
  for (int i = 0; i < kDraws; ++i) {
    first += SelectAction(row, 0.0, tau, ExplorationKind::kBoltzmann, rng) == 0;
  }
  const double f = static_cast<double>(first) / kDraws;
  EXPECT_NEAR(f, 2.0 / 3.0, Band(2.0 / 3.0, kDraws));
  EXPECT_NEAR(1.0 - f, 1.0 / 3.0, Band(1.0 / 3.0, kDraws));
}

TEST(SelectAction, ColdBoltzmannIsGreedy) {
  Rng rng = MakeStream(5, 0);
  const std::array<double, 4> row{0.3, -0.2, 0.1, 0.5};
  int hits = 0;
  for (int i = 0; i < 10000; ++i) {
    hits += SelectAction(row, 0.0, 1e-6, ExplorationKind::kBoltzmann, rng) == 1;
  }
  EXPECT_GE(hits, 9990);
}

TEST(SelectAction, NonPositiveTemperature) {
  Rng rng = MakeStream(6, 0);
  const std::array<double, 2> row{0.0, 1.0};
  EXPECT_THROW(SelectAction(row, 0.0, 0.0, ExplorationKind::kBoltzmann, rng),
               ConfigError);
  EXPECT_THROW(
      SelectAction(row, 0.5, -1.0, ExplorationKind::kMaxBoltzmann, rng),
      ConfigError);
}

TEST(BoltzmannProbabilities, ShiftInvariant) {
  const std::vector<double> row{1.0, 4.0, -2.0, 0.5};
  std::vector<double> shifted(row);
  for (double& q : shifted) q += 1234.5;
  std::vector<double> p(4), ps(4);
  BoltzmannProbabilities(row, 2.0, p);
  BoltzmannProbabilities(shifted, 2.0, ps);
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(p[i], ps[i], 1e-12);
    total += p[i];
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(BoltzmannProbabilities, LargeValuesDoNotOverflow) {
  const std::vector<double> row{1e6, 1e6 + 5.0 * std::numbers::ln2};
  std::vector<double> p(2);
  BoltzmannProbabilities(row, 5.0, p);
  EXPECT_NEAR(p[0], 2.0 / 3.0, 1e-9);
}

TEST(Names, RoundTrip) {
  for (auto k : {ExplorationKind::kEpsGreedy, ExplorationKind::kBoltzmann,
                 ExplorationKind::kMaxBoltzmann}) {
    EXPECT_EQ(ParseExplorationKind(ToString(k)), k);
  }
  for (auto s : {ExplorationSchedule::kConstant, ExplorationSchedule::kLinear,
                 ExplorationSchedule::kExponential}) {
    EXPECT_EQ(ParseExplorationSchedule(ToString(s)), s);
  }
  EXPECT_THROW(ParseExplorationKind("softmax"), ConfigError);
}

TEST(ExplorationSpec, Validate) {
  ExplorationSpec s;
  EXPECT_NO_THROW(s.Validate());
  s.eps0 = 1.5;
  EXPECT_THROW(s.Validate(), ConfigError);
  s = ExplorationSpec{};
  s.tau0 = 0.0;
  EXPECT_THROW(s.Validate(), ConfigError);
  s = ExplorationSpec{};
  s.total_episodes = 0;
  EXPECT_THROW(s.Validate(), ConfigError);
}

}  // namespace
}  // namespace mfcg
