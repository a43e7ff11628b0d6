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

#include "mfcg/config.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mfcg {
namespace {

using nlohmann::json;

// Rejects keys of `obj` outside `allowed`, naming the first offender.
void CheckKeys(const json& obj, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(where.empty() ? "config" : where) +
                      ": expected an object");
  }
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key: " +
                        (where.empty() ? key : std::string(where) + "." + key));
    }
  }
}

template <typename T>
void Read(const json& obj, std::string_view where, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + "." + key + ": wrong value type");
  }
}

std::string ReadString(const json& obj, std::string_view where,
                       const char* key, std::string fallback) {
  Read(obj, where, key, fallback);
  return fallback;
}

void ReadGrid(const json& doc, const char* key, GridSpec& grid) {
  if (!doc.contains(key)) return;
  const json& g = doc.at(key);
  CheckKeys(g, key, {"lo", "hi", "step"});
  Read(g, key, "lo", grid.lo);
  Read(g, key, "hi", grid.hi);
  Read(g, key, "step", grid.step);
}

std::string_view ToString(DriftMean m) {
  return m == DriftMean::kLocal ? "local" : "global";
}

DriftMean ParseDriftMean(std::string_view s) {
  if (s == "local") return DriftMean::kLocal;
  if (s == "global") return DriftMean::kGlobal;
  throw ConfigError("drift_mean: unknown value '" + std::string(s) + "'");
}

}  // namespace

std::string_view ToString(Preset preset) {
  switch (preset) {
    case Preset::kMfcgBaseline:
      return "mfcg_baseline";
    case Preset::kMfgDegenerate:
      return "mfg_degenerate";
    case Preset::kMfcDegenerate:
      return "mfc_degenerate";
    case Preset::kExplorationSweep:
      return "exploration_sweep";
  }
  return "?";
}

Preset ParsePreset(std::string_view name) {
  for (Preset p : {Preset::kMfcgBaseline, Preset::kMfgDegenerate,
                   Preset::kMfcDegenerate, Preset::kExplorationSweep}) {
    if (ToString(p) == name) return p;
  }
  throw ConfigError("preset: unknown value '" + std::string(name) + "'");
}

ExperimentConfig PresetConfig(Preset preset) {
  ExperimentConfig cfg;
  cfg.preset = preset;
  cfg.model = ModelParams{};  // kappa=1, sigma=2, beta=1, (1.5,.75,2.5,.5,4,2)
  cfg.state_grid = {-1.5, 4.5, 0.25};
  cfg.action_grid = {-6.0, 6.0, 0.25};
  cfg.learn.dt = 1.0 / 16.0;
  cfg.learn.horizon_steps = 320;  // T = 20
  cfg.learn.episodes = 50000;
  cfg.learn.omega_q = 0.55;
  cfg.learn.omega_mu = 0.75;
  cfg.learn.omega_mut = 0.15;
  cfg.learn.exploration = ExplorationByName("eps_con", cfg.learn.episodes);
  switch (preset) {
    case Preset::kMfcgBaseline:
    case Preset::kExplorationSweep:
      break;
    case Preset::kMfgDegenerate:
      cfg.learn.omega_mu = cfg.learn.omega_mut = 0.75;
      break;
    case Preset::kMfcDegenerate:
      cfg.learn.omega_mu = cfg.learn.omega_mut = 0.15;
      break;
  }
  return cfg;
}

void ExperimentConfig::Validate() const {
  model.Validate();
  state_grid.Build();
  action_grid.Build();
  // Distinct distribution exponents mean the three-timescale regime was
  // requested; equal ones are the two-timescale degenerations.
  learn.Validate(learn.omega_mu != learn.omega_mut);
  if (learn.exploration.total_episodes != learn.episodes) {
    throw ConfigError("exploration.total_episodes must equal learn.episodes");
  }
  StepDiscount(learn, model.beta);
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (workers < 0) throw ConfigError("workers must be >= 0");
  if (thin < 1) throw ConfigError("thin must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
}

std::int64_t ExperimentConfig::EffectiveWindow() const {
  return std::min(window, learn.episodes);
}

ExperimentConfig ParseConfig(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  CheckKeys(doc, "",
            {"preset", "model", "state_grid", "action_grid", "learn",
             "exploration", "drift_mean", "runs", "base_seed", "output_dir",
             "workers", "thin", "window"});

  ExperimentConfig cfg;
  if (doc.contains("preset") && !doc.at("preset").is_null()) {
    cfg = PresetConfig(ParsePreset(ReadString(doc, "config", "preset", "")));
  }

  if (doc.contains("model")) {
    const json& m = doc.at("model");
    CheckKeys(m, "model",
              {"kappa", "sigma", "beta", "c1", "c2", "ct1", "ct2", "ct3", "ct"});
    Read(m, "model", "kappa", cfg.model.kappa);
    Read(m, "model", "sigma", cfg.model.sigma);
    Read(m, "model", "beta", cfg.model.beta);
    Read(m, "model", "c1", cfg.model.c1);
    Read(m, "model", "c2", cfg.model.c2);
    Read(m, "model", "ct1", cfg.model.ct1);
    Read(m, "model", "ct2", cfg.model.ct2);
    Read(m, "model", "ct3", cfg.model.ct3);
    Read(m, "model", "ct", cfg.model.ct);
  }
  ReadGrid(doc, "state_grid", cfg.state_grid);
  ReadGrid(doc, "action_grid", cfg.action_grid);

  if (doc.contains("learn")) {
    const json& l = doc.at("learn");
    CheckKeys(l, "learn",
              {"omega_q", "omega_mu", "omega_mut", "horizon_steps", "dt",
               "episodes", "discount_mode", "stage_cost_scaled_by_dt", "tol_q",
               "tol_mu", "tol_mut", "break_patience"});
    Read(l, "learn", "omega_q", cfg.learn.omega_q);
    Read(l, "learn", "omega_mu", cfg.learn.omega_mu);
    Read(l, "learn", "omega_mut", cfg.learn.omega_mut);
    Read(l, "learn", "horizon_steps", cfg.learn.horizon_steps);
    Read(l, "learn", "dt", cfg.learn.dt);
    Read(l, "learn", "episodes", cfg.learn.episodes);
    cfg.learn.discount_mode = ParseDiscountMode(ReadString(
        l, "learn", "discount_mode",
        std::string(ToString(cfg.learn.discount_mode))));
    Read(l, "learn", "stage_cost_scaled_by_dt",
         cfg.learn.stage_cost_scaled_by_dt);
    Read(l, "learn", "tol_q", cfg.learn.tol_q);
    Read(l, "learn", "tol_mu", cfg.learn.tol_mu);
    Read(l, "learn", "tol_mut", cfg.learn.tol_mut);
    Read(l, "learn", "break_patience", cfg.learn.break_patience);
  }

  if (doc.contains("exploration")) {
    const json& x = doc.at("exploration");
    CheckKeys(x, "exploration",
              {"kind", "schedule", "eps0", "tau0", "decay", "rate_floor"});
    ExplorationSpec& spec = cfg.learn.exploration;
    spec.kind = ParseExplorationKind(ReadString(
        x, "exploration", "kind", std::string(ToString(spec.kind))));
    spec.schedule = ParseExplorationSchedule(ReadString(
        x, "exploration", "schedule", std::string(ToString(spec.schedule))));
    Read(x, "exploration", "eps0", spec.eps0);
    Read(x, "exploration", "tau0", spec.tau0);
    Read(x, "exploration", "decay", spec.decay);
    Read(x, "exploration", "rate_floor", spec.rate_floor);
  }
  cfg.learn.exploration.total_episodes = cfg.learn.episodes;

  cfg.drift_mean = ParseDriftMean(ReadString(
      doc, "config", "drift_mean", std::string(ToString(cfg.drift_mean))));
  Read(doc, "config", "runs", cfg.runs);
  Read(doc, "config", "base_seed", cfg.base_seed);
  Read(doc, "config", "output_dir", cfg.output_dir);
  Read(doc, "config", "workers", cfg.workers);
  Read(doc, "config", "thin", cfg.thin);
  Read(doc, "config", "window", cfg.window);

  cfg.Validate();
  return cfg;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::string SerializeConfig(const ExperimentConfig& cfg) {
  const auto& l = cfg.learn;
  const auto& x = l.exploration;
  json doc = {
      {"preset", cfg.preset ? json(ToString(*cfg.preset)) : json(nullptr)},
      {"model",
       {{"kappa", cfg.model.kappa},
        {"sigma", cfg.model.sigma},
        {"beta", cfg.model.beta},
        {"c1", cfg.model.c1},
        {"c2", cfg.model.c2},
        {"ct1", cfg.model.ct1},
        {"ct2", cfg.model.ct2},
        {"ct3", cfg.model.ct3},
        {"ct", cfg.model.ct}}},
      {"state_grid",
       {{"lo", cfg.state_grid.lo},
        {"hi", cfg.state_grid.hi},
        {"step", cfg.state_grid.step}}},
      {"action_grid",
       {{"lo", cfg.action_grid.lo},
        {"hi", cfg.action_grid.hi},
        {"step", cfg.action_grid.step}}},
      {"learn",
       {{"omega_q", l.omega_q},
        {"omega_mu", l.omega_mu},
        {"omega_mut", l.omega_mut},
        {"horizon_steps", l.horizon_steps},
        {"dt", l.dt},
        {"episodes", l.episodes},
        {"discount_mode", ToString(l.discount_mode)},
        {"stage_cost_scaled_by_dt", l.stage_cost_scaled_by_dt},
        {"tol_q", l.tol_q},
        {"tol_mu", l.tol_mu},
        {"tol_mut", l.tol_mut},
        {"break_patience", l.break_patience}}},
      {"exploration",
       {{"kind", ToString(x.kind)},
        {"schedule", ToString(x.schedule)},
        {"eps0", x.eps0},
        {"tau0", x.tau0},
        {"decay", x.decay},
        {"rate_floor", x.rate_floor}}},
      {"drift_mean", ToString(cfg.drift_mean)},
      {"runs", cfg.runs},
      {"base_seed", cfg.base_seed},
      {"output_dir", cfg.output_dir},
      {"workers", cfg.workers},
      {"thin", cfg.thin},
      {"window", cfg.window},
  };
  return doc.dump(2) + "\n";
}

std::uint64_t DeriveRunSeed(std::uint64_t base_seed, std::uint64_t run_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(base_seed),
                    static_cast<std::uint32_t>(base_seed >> 32),
                    static_cast<std::uint32_t>(run_index),
                    static_cast<std::uint32_t>(run_index >> 32)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace mfcg
