// Copyright 2026 The litsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "litsim/optimizer.hpp"
#include "litsim/trajectories.hpp"
#include "litsim/serialization.hpp"

namespace litsim {

inline constexpr const char* kVersion = "0.1.0";

enum class RunKind { kEvolve, kFlux, kErgotropy, kTrajectories, kOptimize, kFig1, kLitCheck };

std::string_view to_string(RunKind kind);
std::optional<RunKind> run_kind_from_string(std::string_view name);

struct InitialStateSpec {
  enum class Type { kPure, kGibbs, kBoltzmannPure, kDensity };
  Type type = Type::kPure;
  std::vector<Complex> amplitudes;       // kPure
  double beta = 1.0;                     // kGibbs, kBoltzmannPure
  std::optional<ComplexMatrix> density;  // kDensity

  DensityMatrix build(const HermitianOperator& h) const;
};

/// Defaults reproduce the published qubit figure: gamma0 = 1e-2 omega,
/// k_B T0 = 0.2 omega (beta0 = 5), k_B T_f = omega (beta_f = 1). |alpha| and
/// the phase-locked rate are not given there; 0.1 omega and -omega are our
/// choices.
struct Fig1Settings {
  QubitThermalModel model{1.0, 1e-2, 1.0};
  double beta0 = 5.0;
  double alpha_mag = 0.1;
  double constant_theta0 = 0.0;
  /// theta_rate of the two phase-locked strategies. -omega keeps
  /// alpha(t) rho_ge(t) at a fixed phase since rho_ge rotates as e^{i omega t}.
  double locked_rate = -1.0;
  TimeGrid grid{0.0, 1000.0, 2e-3 * 3.141592653589793};
  std::size_t output_stride = 10;
};

struct TrajectorySettings {
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::size_t record_stride = 1;
  std::size_t write_records = 1;
  std::size_t threads = 0;
};

struct Scenario {
  RunKind kind = RunKind::kFig1;
  std::optional<QubitThermalModel> model;
  std::optional<Strategy> strategy;
  std::optional<InitialStateSpec> initial_state;
  std::optional<TimeGrid> grid;
  std::size_t output_stride = 1;
  std::optional<QubitLITParams> qubit_lit;
  std::optional<LITParams> general_lit;
  TrajectorySettings trajectories;
  std::optional<Objective> objective;
  std::optional<SearchSpace> space;
  std::vector<double> ergotropy_alpha;
  double ergotropy_theta = 0.0;
  Fig1Settings fig1;
  std::optional<Strategy> strategy_b;
  double tolerance = 1e-10;
  std::string output_dir;
  /// Effective configuration document (after command-line overrides).
  Json config;

  /// The thermal-qubit strategy when a model is given, else `strategy`.
  Strategy base_strategy() const;
  /// The LIT to apply to the base strategy, if any.
  std::optional<LITSchedule> lit_schedule() const;
};

/// Accepts a scenario document or a run manifest (whose "scenario" member is
/// used). Unknown keys are rejected; errors carry the JSON path.
Scenario parse_scenario(std::string_view text);
Scenario parse_scenario_json(const Json& doc);

struct Overrides {
  std::optional<RunKind> kind;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<std::string> output_dir;
};

/// Folds command-line overrides into a scenario document (unwrapping a
/// manifest first). A subcommand that contradicts "kind" is a ConfigError.
Json apply_overrides(Json doc, const Overrides& overrides);

struct RunResult {
  std::vector<std::string> files;  // relative to the output directory
  std::string summary;
};

/// Dispatches on the run kind, writes CSV data and manifest.json into out_dir.
RunResult run_scenario(const Scenario& s, const std::filesystem::path& out_dir);

struct Fig1Curve {
  std::string name;
  QubitLITParams params;
  std::vector<double> flux;
  std::vector<double> energy;
};

struct Fig1Data {
  std::vector<StateSample> states;  // shared by all curves
  std::array<Fig1Curve, 4> curves;  // alpha0, constant_phase, constructive, destructive
  double asymptotic_energy;         // Tr(H rho_as)
};

Fig1Data compute_fig1(const Fig1Settings& settings);
/// Writes fig1_flux.csv, fig1_energy.csv, fig1_state.csv, fig1_strategies.csv.
std::vector<std::string> run_fig1(const Fig1Settings& settings,
                                  const std::filesystem::path& out_dir);

/// "%.17g".
std::string format_double(double x);

}  // namespace litsim
