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

#ifndef MFCG_CONFIG_H_
#define MFCG_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "mfcg/core_types.h"
#include "mfcg/env.h"
#include "mfcg/learner.h"

namespace mfcg {

enum class Preset { kMfcgBaseline, kMfgDegenerate, kMfcDegenerate, kExplorationSweep };

std::string_view ToString(Preset preset);
Preset ParsePreset(std::string_view name);

struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  double step = 1.0;

  Grid Build() const { return MakeGrid(lo, hi, step); }
  bool operator==(const GridSpec&) const = default;
};

// Everything needed to reproduce one multi-run experiment. The exploration
// heuristic lives in learn.exploration; its total_episodes always mirrors
// learn.episodes.
struct ExperimentConfig {
  std::optional<Preset> preset;
  ModelParams model;
  GridSpec state_grid{-1.5, 4.5, 0.25};
  GridSpec action_grid{-6.0, 6.0, 0.25};
  LearnConfig learn;
  DriftMean drift_mean = DriftMean::kLocal;
  std::int64_t runs = 10;
  std::uint64_t base_seed = 0;
  std::string output_dir = "out";
  std::int64_t workers = 0;  // 0 picks the hardware concurrency
  std::int64_t thin = 1;     // emit every thin-th episode to the CSVs
  std::int64_t window = 5000;  // trailing episodes averaged for policy.csv

  // Throws ConfigError naming the offending key.
  void Validate() const;

  // min(window, learn.episodes)
  std::int64_t EffectiveWindow() const;

  bool operator==(const ExperimentConfig&) const = default;
};

// Fully expanded preset values.
ExperimentConfig PresetConfig(Preset preset);

// Parses the JSON config format. Keys absent from the document keep their
// preset (or default) values; unknown keys are rejected.
ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Writes every field, so ParseConfig(SerializeConfig(c)) == c.
std::string SerializeConfig(const ExperimentConfig& cfg);

// Seed of run `run_index`, derived from (base_seed, run_index).
std::uint64_t DeriveRunSeed(std::uint64_t base_seed, std::uint64_t run_index);

}  // namespace mfcg

#endif  // MFCG_CONFIG_H_
