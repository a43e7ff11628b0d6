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

#include <algorithm>
#include <cmath>
#include <string>

namespace mfcg {
namespace {

double Scheduled(const ExplorationSpec& spec, double base, std::int64_t k) {
  switch (spec.schedule) {
    case ExplorationSchedule::kConstant:
      return base;
    case ExplorationSchedule::kLinear:
      return base * static_cast<double>(spec.total_episodes - k) /
             static_cast<double>(spec.total_episodes);
    case ExplorationSchedule::kExponential:
      return std::max(base * std::pow(spec.decay, static_cast<double>(k)),
                      spec.rate_floor);
  }
  return base;
}

std::size_t SampleBoltzmann(std::span<const double> q_row, double tau,
                            Rng& rng) {
  const double q_min = *std::min_element(q_row.begin(), q_row.end());
  double total = 0.0;
  // Rows are short (tens of actions); recomputing exp in the second pass
  // avoids a heap buffer in the hot loop.
  for (double q : q_row) total += std::exp(-(q - q_min) / tau);
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  for (std::size_t a = 0; a < q_row.size(); ++a) {
    acc += std::exp(-(q_row[a] - q_min) / tau);
    if (u < acc) return a;
  }
  // u landed on the rounding slack at the top end; return the last action
  // with positive weight.
  for (std::size_t a = q_row.size(); a-- > 0;) {
    if (std::exp(-(q_row[a] - q_min) / tau) > 0.0) return a;
  }
  return ArgMin(q_row);
}

}  // namespace

void ExplorationSpec::Validate() const {
  if (!(eps0 >= 0.0 && eps0 <= 1.0)) {
    throw ConfigError("exploration.eps0 must lie in [0, 1]");
  }
  if (!(tau0 > 0.0)) throw ConfigError("exploration.tau0 must be positive");
  if (!(decay > 0.0 && decay <= 1.0)) {
    throw ConfigError("exploration.decay must lie in (0, 1]");
  }
  if (total_episodes < 1) {
    throw ConfigError("exploration.total_episodes must be >= 1");
  }
  if (!(rate_floor >= 0.0)) {
    throw ConfigError("exploration.rate_floor must be non-negative");
  }
}

ExplorationRates RateAt(const ExplorationSpec& spec, std::int64_t k) {
  MFCG_CHECK(k >= 0 && k < spec.total_episodes,
             "episode index outside [0, total_episodes)");
  if (spec.kind == ExplorationKind::kEpsGreedy) {
    return {Scheduled(spec, spec.eps0, k), spec.tau0};
  }
  return {spec.eps0, Scheduled(spec, spec.tau0, k)};
}

std::size_t ArgMin(std::span<const double> row) {
  MFCG_CHECK(!row.empty(), "empty Q row");
  return static_cast<std::size_t>(
      std::min_element(row.begin(), row.end()) - row.begin());
}

void BoltzmannProbabilities(std::span<const double> q_row, double tau,
                            std::span<double> out) {
  MFCG_CHECK(out.size() == q_row.size(), "output size mismatch");
  if (!(tau > 0.0)) throw ConfigError("Boltzmann temperature must be positive");
  const double q_min = *std::min_element(q_row.begin(), q_row.end());
  double total = 0.0;
  for (std::size_t a = 0; a < q_row.size(); ++a) {
    out[a] = std::exp(-(q_row[a] - q_min) / tau);
    total += out[a];
  }
  for (double& p : out) p /= total;
}

std::size_t SelectAction(std::span<const double> q_row, double eps, double tau,
                         ExplorationKind kind, Rng& rng) {
  MFCG_CHECK(!q_row.empty(), "empty Q row");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (kind) {
    case ExplorationKind::kEpsGreedy:
      if (unit(rng) < eps) {
        return std::uniform_int_distribution<std::size_t>(
            0, q_row.size() - 1)(rng);
      }
      return ArgMin(q_row);
    case ExplorationKind::kBoltzmann:
      if (!(tau > 0.0)) {
        throw ConfigError("Boltzmann temperature must be positive");
      }
      return SampleBoltzmann(q_row, tau, rng);
    case ExplorationKind::kMaxBoltzmann:
      if (!(tau > 0.0)) {
        throw ConfigError("Boltzmann temperature must be positive");
      }
      if (unit(rng) < eps) return SampleBoltzmann(q_row, tau, rng);
      return ArgMin(q_row);
  }
  return ArgMin(q_row);
}

std::array<NamedExploration, 9> ExplorationTable(std::int64_t k_total) {
  using K = ExplorationKind;
  using S = ExplorationSchedule;
  auto make = [k_total](K kind, S schedule, double eps0, double tau0,
                        double decay) {
    ExplorationSpec spec;
    spec.kind = kind;
    spec.schedule = schedule;
    spec.eps0 = eps0;
    spec.tau0 = tau0;
    spec.decay = decay;
    spec.total_episodes = k_total;
    return spec;
  };
  return {{
      {"eps_con", make(K::kEpsGreedy, S::kConstant, 0.01, 5.0, 1.0)},
      {"eps_lin", make(K::kEpsGreedy, S::kLinear, 0.05, 5.0, 1.0)},
      {"eps_exp", make(K::kEpsGreedy, S::kExponential, 1.0, 5.0, 0.9995)},
      {"boltz_con", make(K::kBoltzmann, S::kConstant, 0.0, 5.0, 1.0)},
      {"boltz_lin", make(K::kBoltzmann, S::kLinear, 0.0, 5.0, 1.0)},
      {"boltz_exp", make(K::kBoltzmann, S::kExponential, 0.0, 5.0, 0.9999)},
      {"mb_con", make(K::kMaxBoltzmann, S::kConstant, 0.05, 5.0, 1.0)},
      {"mb_lin", make(K::kMaxBoltzmann, S::kLinear, 0.05, 5.0, 1.0)},
      {"mb_exp", make(K::kMaxBoltzmann, S::kExponential, 0.05, 5.0, 0.9999)},
  }};
}

ExplorationSpec ExplorationByName(std::string_view name,
                                  std::int64_t total_episodes) {
  for (const auto& entry : ExplorationTable(total_episodes)) {
    if (entry.name == name) return entry.spec;
  }
  throw ConfigError("unknown exploration heuristic: " + std::string(name));
}

std::string_view ToString(ExplorationKind kind) {
  switch (kind) {
    case ExplorationKind::kEpsGreedy:
      return "eps_greedy";
    case ExplorationKind::kBoltzmann:
      return "boltzmann";
    case ExplorationKind::kMaxBoltzmann:
      return "max_boltzmann";
  }
  return "?";
}

std::string_view ToString(ExplorationSchedule schedule) {
  switch (schedule) {
    case ExplorationSchedule::kConstant:
      return "constant";
    case ExplorationSchedule::kLinear:
      return "linear";
    case ExplorationSchedule::kExponential:
      return "exponential";
  }
  return "?";
}

ExplorationKind ParseExplorationKind(std::string_view s) {
  if (s == "eps_greedy") return ExplorationKind::kEpsGreedy;
  if (s == "boltzmann") return ExplorationKind::kBoltzmann;
  if (s == "max_boltzmann") return ExplorationKind::kMaxBoltzmann;
  throw ConfigError("exploration.kind: unknown value '" + std::string(s) + "'");
}

ExplorationSchedule ParseExplorationSchedule(std::string_view s) {
  if (s == "constant") return ExplorationSchedule::kConstant;
  if (s == "linear") return ExplorationSchedule::kLinear;
  if (s == "exponential") return ExplorationSchedule::kExponential;
  throw ConfigError("exploration.schedule: unknown value '" + std::string(s) +
                    "'");
}

}  // namespace mfcg
