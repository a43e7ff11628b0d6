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

#ifndef MFCG_EXPLORATION_H_
#define MFCG_EXPLORATION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "mfcg/core_types.h"

namespace mfcg {

// Undirected exploration heuristics. The Q rows hold costs, so "greedy"
// always means the lowest entry.
enum class ExplorationKind {
  kEpsGreedy,     // uniform action w.p. eps, argmin otherwise
  kBoltzmann,     // softmin with temperature tau
  kMaxBoltzmann,  // softmin sample w.p. eps, argmin otherwise
};

// How the scheduled parameter evolves with the episode index. The scheduled
// parameter is eps for kEpsGreedy and tau for the two Boltzmann kinds.
enum class ExplorationSchedule { kConstant, kLinear, kExponential };

struct ExplorationSpec {
  ExplorationKind kind = ExplorationKind::kEpsGreedy;
  ExplorationSchedule schedule = ExplorationSchedule::kConstant;
  double eps0 = 0.01;
  double tau0 = 5.0;
  double decay = 1.0;
  std::int64_t total_episodes = 1;
  // Lower bound applied to exponentially decaying rates. Zero disables it.
  double rate_floor = 1e-4;

  void Validate() const;

  bool operator==(const ExplorationSpec&) const = default;
};

struct ExplorationRates {
  double eps;
  double tau;
};

// Rates in effect during episode k (0 <= k < total_episodes).
ExplorationRates RateAt(const ExplorationSpec& spec, std::int64_t k);

// Lowest index of the smallest entry.
std::size_t ArgMin(std::span<const double> row);

// Samples an action index for one Q row. Throws ConfigError when a Boltzmann
// kind is asked to sample with tau <= 0.
std::size_t SelectAction(std::span<const double> q_row, double eps, double tau,
                         ExplorationKind kind, Rng& rng);

// Softmin probabilities exp(-q/tau) / sum exp(-q'/tau), shifted by the row
// minimum before exponentiation.
void BoltzmannProbabilities(std::span<const double> q_row, double tau,
                            std::span<double> out);

// The nine heuristics of the exploration comparison, keyed by name
// ("eps_con", ..., "mb_exp").
struct NamedExploration {
  std::string_view name;
  ExplorationSpec spec;
};
std::array<NamedExploration, 9> ExplorationTable(std::int64_t total_episodes);

// Lookup into ExplorationTable by name; throws ConfigError if unknown.
ExplorationSpec ExplorationByName(std::string_view name,
                                  std::int64_t total_episodes);

std::string_view ToString(ExplorationKind kind);
std::string_view ToString(ExplorationSchedule schedule);
ExplorationKind ParseExplorationKind(std::string_view s);
ExplorationSchedule ParseExplorationSchedule(std::string_view s);

}  // namespace mfcg

#endif  // MFCG_EXPLORATION_H_
