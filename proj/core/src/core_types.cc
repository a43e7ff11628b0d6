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

#include <cmath>
#include <numeric>
#include <utility>

namespace mfcg {

Rng MakeStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

Grid::Grid(double lo, double step, std::size_t count) : lo_(lo), step_(step) {
  if (!(step > 0.0)) throw ConfigError("grid step must be positive");
  if (count < 2) throw ConfigError("grid needs at least 2 points");
  points_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    points_[i] = lo + static_cast<double>(i) * step;
  }
}

Grid MakeGrid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw ConfigError("grid step must be positive");
  if (!(hi > lo)) throw ConfigError("grid hi must exceed lo");
  const double span = (hi - lo) / step;
  const double rounded = std::round(span);
  if (std::abs(span - rounded) > 1e-9) {
    throw ConfigError("grid span (hi - lo) is not a multiple of step");
  }
  return Grid(lo, step, static_cast<std::size_t>(rounded) + 1);
}

std::size_t Snap(const Grid& grid, double x) {
  const double t = (x - grid.lo()) / grid.step();
  if (!(t > 0.0)) return 0;  // also catches NaN
  const double last = static_cast<double>(grid.size() - 1);
  if (t >= last) return grid.size() - 1;
  return static_cast<std::size_t>(std::floor(t + 0.5));
}

bool IsValidDistribution(std::span<const double> mass) {
  double sum = 0.0;
  for (double m : mass) {
    if (!(m >= 0.0)) return false;
    sum += m;
  }
  return std::abs(sum - 1.0) <= kProbSumTolerance;
}

ProbVec::ProbVec(std::shared_ptr<const Grid> grid, std::vector<double> mass)
    : grid_(std::move(grid)), mass_(std::move(mass)) {
  if (grid_ == nullptr) throw ConfigError("distribution needs a grid");
  if (mass_.size() != grid_->size()) {
    throw ConfigError("distribution size does not match its grid");
  }
  if (!IsValidDistribution(mass_)) {
    throw ConfigError("mass is not a probability vector");
  }
}

ProbVec ProbVec::Uniform(std::shared_ptr<const Grid> grid) {
  const std::size_t n = grid->size();
  return ProbVec(std::move(grid),
                 std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ProbVec ProbVec::PointMass(std::shared_ptr<const Grid> grid, std::size_t idx) {
  std::vector<double> mass(grid->size(), 0.0);
  if (idx >= mass.size()) throw ConfigError("point mass index out of range");
  mass[idx] = 1.0;
  return ProbVec(std::move(grid), std::move(mass));
}

double Mean(const ProbVec& p) {
  const auto points = p.grid().points();
  const auto mass = p.mass();
  return std::transform_reduce(points.begin(), points.end(), mass.begin(),
                               0.0);
}

QTable::QTable(std::size_t num_states, std::size_t num_actions)
    : num_states_(num_states),
      num_actions_(num_actions),
      values_(num_states * num_actions, 0.0),
      visits_(num_states * num_actions, 0) {
  if (num_states == 0 || num_actions == 0) {
    throw ConfigError("Q table needs at least one state and one action");
  }
}

void ModelParams::Validate() const {
  if (!(sigma > 0.0)) throw ConfigError("model.sigma must be positive");
  if (!(beta > 0.0)) throw ConfigError("model.beta must be positive");
  if (!(kappa >= 0.0)) throw ConfigError("model.kappa must be non-negative");
  if (!(c1 + ct1 > 0.0)) throw ConfigError("model.c1 + model.ct1 must be positive");
  for (double v : {c2, ct2, ct3, ct}) {
    if (!std::isfinite(v)) throw ConfigError("model cost constants must be finite");
  }
}

}  // namespace mfcg
