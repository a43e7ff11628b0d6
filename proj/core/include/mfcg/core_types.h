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

#ifndef MFCG_CORE_TYPES_H_
#define MFCG_CORE_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfcg {

// Raised for invalid user-supplied configuration (bad grid spans, negative
// rates, unknown keys). The message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a caller breaks a documented precondition. These are bugs in
// the calling code, not bad input data.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define MFCG_CHECK(cond, msg)                                            \
  do {                                                                   \
    if (!(cond)) {                                                       \
      throw ::mfcg::ContractViolation(std::string(__FILE__) + ":" +      \
                                      std::to_string(__LINE__) + ": " +  \
                                      (msg));                            \
    }                                                                    \
  } while (false)

// All randomness flows through this engine type.
using Rng = std::mt19937_64;

// Builds an engine for sub-stream `stream` of a run seeded with `seed`.
// Distinct (seed, stream) pairs give decorrelated engines.
Rng MakeStream(std::uint64_t seed, std::uint64_t stream);

inline constexpr double kProbSumTolerance = 1e-9;

// Uniform 1-D grid, used for both the state and the action space.
class Grid {
 public:
  Grid(double lo, double step, std::size_t count);

  double lo() const { return lo_; }
  double hi() const { return points_.back(); }
  double step() const { return step_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  std::span<const double> points() const { return points_; }

  bool operator==(const Grid& other) const {
    return lo_ == other.lo_ && step_ == other.step_ &&
           points_.size() == other.points_.size();
  }

 private:
  double lo_;
  double step_;
  std::vector<double> points_;
};

// Grid with round((hi - lo) / step) + 1 points. Throws ConfigError if the
// span is not an integral multiple of step (within 1e-9) or step <= 0.
Grid MakeGrid(double lo, double hi, double step);

// Index of the grid point nearest to x. Out-of-range values clamp to the
// boundary; exact midpoints round toward +infinity.
std::size_t Snap(const Grid& grid, double x);

// Probability mass over the points of a grid.
class ProbVec {
 public:
  // Throws ConfigError unless `mass` is a valid distribution over `grid`.
  ProbVec(std::shared_ptr<const Grid> grid, std::vector<double> mass);

  static ProbVec Uniform(std::shared_ptr<const Grid> grid);
  static ProbVec PointMass(std::shared_ptr<const Grid> grid, std::size_t idx);

  const Grid& grid() const { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }
  std::size_t size() const { return mass_.size(); }
  double operator[](std::size_t i) const { return mass_[i]; }
  std::span<const double> mass() const { return mass_; }

  bool operator==(const ProbVec& other) const {
    return *grid_ == *other.grid_ && mass_ == other.mass_;
  }

 private:
  friend ProbVec UpdateDistribution(ProbVec p, std::size_t x_idx, double rho);

  std::shared_ptr<const Grid> grid_;
  std::vector<double> mass_;
};

// Moves p toward the point mass at x_idx by a step of size rho in [0, 1]:
// mass'[i] = mass[i] + rho * (1{i == x_idx} - mass[i]). Never renormalizes.
ProbVec UpdateDistribution(ProbVec p, std::size_t x_idx, double rho);

// Non-negative entries summing to one within kProbSumTolerance.
bool IsValidDistribution(std::span<const double> mass);

// First moment of p on its grid.
double Mean(const ProbVec& p);

// Expected discounted cost table with per-cell visit counters.
class QTable {
 public:
  QTable(std::size_t num_states, std::size_t num_actions);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }

  double value(std::size_t x, std::size_t a) const {
    return values_[x * num_actions_ + a];
  }
  double& value(std::size_t x, std::size_t a) {
    return values_[x * num_actions_ + a];
  }
  std::uint64_t visits(std::size_t x, std::size_t a) const {
    return visits_[x * num_actions_ + a];
  }
  std::uint64_t& visits(std::size_t x, std::size_t a) {
    return visits_[x * num_actions_ + a];
  }

  std::span<const double> row(std::size_t x) const {
    return std::span<const double>(values_).subspan(x * num_actions_,
                                                    num_actions_);
  }
  std::span<const double> values() const { return values_; }
  std::span<const std::uint64_t> visit_counts() const { return visits_; }

  bool operator==(const QTable&) const = default;

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<double> values_;
  std::vector<std::uint64_t> visits_;
};

// Model constants of the bank lending game.
struct ModelParams {
  double kappa = 1.0;  // intra-bank mean-reversion rate
  double sigma = 2.0;
  double beta = 1.0;  // discount rate
  double c1 = 1.5;
  double c2 = 0.75;
  double ct1 = 2.5;
  double ct2 = 0.5;
  double ct3 = 4.0;
  double ct = 2.0;

  // Throws ConfigError naming the first violated constraint.
  void Validate() const;

  bool operator==(const ModelParams&) const = default;
};

}  // namespace mfcg

#endif  // MFCG_CORE_TYPES_H_
