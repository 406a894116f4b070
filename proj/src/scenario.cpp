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

#include "litsim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace litsim {

using namespace json_check;

std::string format_double(double x) {
  char buf[40];
  if (x == 0.0) x = 0.0;  // no "-0" in output files
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

constexpr std::array<std::pair<RunKind, std::string_view>, 7> kKindNames{{
    {RunKind::kEvolve, "evolve"},
    {RunKind::kFlux, "flux"},
    {RunKind::kErgotropy, "ergotropy"},
    {RunKind::kTrajectories, "trajectories"},
    {RunKind::kOptimize, "optimize"},
    {RunKind::kFig1, "fig1"},
    {RunKind::kLitCheck, "lit-check"},
}};

}  // namespace

std::string_view to_string(RunKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<RunKind> run_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

// --- initial states --------------------------------------------------------

DensityMatrix InitialStateSpec::build(const HermitianOperator& h) const {
  switch (type) {
    case Type::kPure:
      return DensityMatrix(PureState::normalized(amplitudes));
    case Type::kGibbs:
      return gibbs_state(h, beta);
    case Type::kBoltzmannPure:
      return DensityMatrix(boltzmann_pure_state(h, beta));
    case Type::kDensity:
      return DensityMatrix(*density);
  }
  throw ValidationError("InitialStateSpec: unknown type");
}

Strategy Scenario::base_strategy() const {
  if (model) return make_qubit_thermal_strategy(*model);
  if (strategy) return *strategy;
  throw ConfigError("$: scenario defines neither \"model\" nor \"strategy\"");
}

std::optional<LITSchedule> Scenario::lit_schedule() const {
  if (qubit_lit) return qubit_lit_schedule(*qubit_lit, *model);
  if (general_lit) return LITSchedule::constant(*general_lit);
  return std::nullopt;
}

// --- parsing ---------------------------------------------------------------

namespace {

// Re-throws library validation failures as configuration errors at `path`.
template <typename F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

double positive(const Json& j, const std::string& path) {
  const double x = number(j, path);
  if (!(x > 0.0)) throw ConfigError(path + ": must be > 0");
  return x;
}

QubitThermalModel parse_model(const Json& j, const std::string& path) {
  object_with_keys(j, path, {"omega", "gamma0", "beta_f"});
  const double omega = positive(required(j, "omega", path), path + ".omega");
  const double gamma0 = positive(required(j, "gamma0", path), path + ".gamma0");
  double beta_f = std::numeric_limits<double>::infinity();
  const Json& b = required(j, "beta_f", path);
  if (b.is_string() && b.get<std::string>() == "inf") {
    beta_f = std::numeric_limits<double>::infinity();
  } else {
    beta_f = positive(b, path + ".beta_f");
  }
  return QubitThermalModel(omega, gamma0, beta_f);
}

InitialStateSpec parse_initial_state(const Json& j, const std::string& path,
                                     const HermitianOperator& h) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  const std::string type = string(required(j, "type", path), path + ".type");
  InitialStateSpec spec;
  if (type == "pure") {
    object_with_keys(j, path, {"type", "re", "im"});
    Json amps = {{"re", required(j, "re", path)}, {"im", required(j, "im", path)}};
    spec.type = InitialStateSpec::Type::kPure;
    spec.amplitudes = complex_vector_from_json(amps, path);
    if (spec.amplitudes.size() != h.dim()) {
      throw ConfigError(path + ": expected " + std::to_string(h.dim()) + " amplitudes");
    }
  } else if (type == "gibbs" || type == "boltzmann_pure") {
    object_with_keys(j, path, {"type", "beta"});
    spec.type = type == "gibbs" ? InitialStateSpec::Type::kGibbs
                                : InitialStateSpec::Type::kBoltzmannPure;
    spec.beta = positive(required(j, "beta", path), path + ".beta");
  } else if (type == "density") {
    object_with_keys(j, path, {"type", "matrix"});
    spec.type = InitialStateSpec::Type::kDensity;
    spec.density = matrix_from_json(required(j, "matrix", path), path + ".matrix");
    if (spec.density->dim() != h.dim()) {
      throw ConfigError(path + ".matrix: dimension does not match the system");
    }
  } else {
    throw ConfigError(path + ".type: expected one of pure, gibbs, boltzmann_pure, density");
  }
  at_path(path, [&] { return spec.build(h); });
  return spec;
}

TimeGrid parse_time(const Json& j, const std::string& path, std::size_t& stride) {
  object_with_keys(j, path, {"t0", "t_max", "dt", "output_stride"});
  const double t0 = j.contains("t0") ? number(j.at("t0"), path + ".t0") : 0.0;
  const double t_max = number(required(j, "t_max", path), path + ".t_max");
  const double dt = positive(required(j, "dt", path), path + ".dt");
  if (!(t0 < t_max)) throw ConfigError(path + ".t_max: must exceed t0");
  if (j.contains("output_stride")) {
    stride = unsigned_integer(j.at("output_stride"), path + ".output_stride");
    if (stride == 0) throw ConfigError(path + ".output_stride: must be >= 1");
  }
  return at_path(path, [&] { return TimeGrid(t0, t_max, dt); });
}

Objective parse_objective(const Json& j, const std::string& path) {
  object_with_keys(j, path, {"kind", "t", "t_begin", "t_end", "sense"});
  const std::string kind = string(required(j, "kind", path), path + ".kind");
  Sense sense = Sense::kMaximize;
  if (j.contains("sense")) {
    const std::string s = string(j.at("sense"), path + ".sense");
    if (s == "maximize") {
      sense = Sense::kMaximize;
    } else if (s == "minimize") {
      sense = Sense::kMinimize;
    } else {
      throw ConfigError(path + ".sense: expected maximize or minimize");
    }
  }
  auto time = [&](const char* key) { return number(required(j, key, path), path + "." + key); };
  if (kind == "instantaneous_flux") return Objective::instantaneous_flux(time("t"), sense);
  if (kind == "integrated_flux") {
    return Objective::integrated_flux(time("t_begin"), time("t_end"), sense);
  }
  if (kind == "final_internal_energy") return Objective::final_internal_energy(time("t"), sense);
  if (kind == "asymptotic_ergotropy") return Objective::asymptotic_ergotropy(sense);
  if (kind == "final_excited_population") {
    return Objective::final_excited_population(time("t"), sense);
  }
  throw ConfigError(path + ".kind: unknown objective \"" + kind + "\"");
}

SearchSpace parse_space(const Json& j, const std::string& path) {
  object_with_keys(j, path, {"alpha_mag", "theta0", "theta_rate"});
  SearchSpace space;
  space.alpha_mag = number_array(required(j, "alpha_mag", path), path + ".alpha_mag");
  space.theta0 = number_array(required(j, "theta0", path), path + ".theta0");
  space.theta_rate = number_array(required(j, "theta_rate", path), path + ".theta_rate");
  at_path(path, [&] {
    space.validate();
    return 0;
  });
  return space;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

Json unwrap_manifest(Json doc) {
  if (doc.is_object() && doc.contains("litsim_manifest")) {
    if (!doc.contains("scenario")) throw ConfigError("$.scenario: manifest has no scenario");
    return doc.at("scenario");
  }
  return doc;
}

}  // namespace

Json apply_overrides(Json doc, const Overrides& o) {
  doc = unwrap_manifest(std::move(doc));
  if (!doc.is_object()) throw ConfigError("$: expected a JSON object");
  if (o.kind) {
    const std::string name(to_string(*o.kind));
    if (doc.contains("kind") && doc.at("kind") != name) {
      throw ConfigError("$.kind: config says " + doc.at("kind").dump() +
                        " but the subcommand is " + name);
    }
    doc["kind"] = name;
  }
  if (o.seed) {
    if (!doc.contains("trajectories")) doc["trajectories"] = Json::object();
    doc["trajectories"]["seed"] = *o.seed;
  }
  if (o.dt) {
    if (!doc.contains("time")) {
      if (doc.value("kind", "") != "fig1") {
        throw ConfigError("$.time: --dt given but the scenario has no time grid");
      }
      const Fig1Settings defaults;
      doc["time"] = {{"t0", defaults.grid.t0},
                     {"t_max", defaults.grid.t_max},
                     {"output_stride", defaults.output_stride}};
    }
    doc["time"]["dt"] = *o.dt;
  }
  if (o.output_dir) doc["output"] = *o.output_dir;
  return doc;
}

Scenario parse_scenario(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("$: malformed JSON: ") + e.what());
  }
  return parse_scenario_json(doc);
}

Scenario parse_scenario_json(const Json& input) {
  const Json doc = unwrap_manifest(input);
  const std::string root = "$";
  object_with_keys(doc, root,
                   {"kind", "model", "strategy", "initial_state", "time", "lit",
                    "trajectories", "optimize", "ergotropy", "fig1", "lit_check",
                    "output"});
  Scenario s;
  s.config = doc;
  const std::string kind_name = string(required(doc, "kind", root), "$.kind");
  const auto kind = run_kind_from_string(kind_name);
  if (!kind) throw ConfigError("$.kind: unknown run kind \"" + kind_name + "\"");
  s.kind = *kind;

  if (doc.contains("output")) s.output_dir = string(doc.at("output"), "$.output");

  require(!(doc.contains("model") && doc.contains("strategy")),
          "$: give either \"model\" or \"strategy\", not both");
  if (doc.contains("model")) {
    s.model = at_path("$.model", [&] { return parse_model(doc.at("model"), "$.model"); });
  }
  if (doc.contains("strategy")) {
    s.strategy = at_path("$.strategy",
                         [&] { return strategy_from_json(doc.at("strategy"), "$.strategy"); });
  }
  if (doc.contains("time")) s.grid = parse_time(doc.at("time"), "$.time", s.output_stride);

  const bool has_system = s.model || s.strategy;
  std::optional<Strategy> base;
  if (has_system) base = s.base_strategy();

  if (doc.contains("initial_state")) {
    require(has_system, "$.initial_state: needs \"model\" or \"strategy\"");
    s.initial_state =
        parse_initial_state(doc.at("initial_state"), "$.initial_state", base->hamiltonian());
  }

  if (doc.contains("lit")) {
    const Json& lit = doc.at("lit");
    object_with_keys(lit, "$.lit", {"qubit", "general"});
    require(!(lit.contains("qubit") && lit.contains("general")),
            "$.lit: give either \"qubit\" or \"general\", not both");
    if (lit.contains("qubit")) {
      require(s.model.has_value(), "$.lit.qubit: requires a qubit \"model\"");
      s.qubit_lit = qubit_lit_params_from_json(lit.at("qubit"), "$.lit.qubit");
    } else if (lit.contains("general")) {
      require(has_system, "$.lit.general: needs \"model\" or \"strategy\"");
      s.general_lit = lit_params_from_json(lit.at("general"), "$.lit.general");
      require(s.general_lit->channel_count() == base->channel_count(),
              "$.lit.general.U: acts on " + std::to_string(s.general_lit->channel_count()) +
                  " channels, strategy has " + std::to_string(base->channel_count()));
    } else {
      throw ConfigError("$.lit: expected \"qubit\" or \"general\"");
    }
  }

  if (doc.contains("trajectories")) {
    const Json& t = doc.at("trajectories");
    const std::string p = "$.trajectories";
    object_with_keys(t, p, {"count", "seed", "record_stride", "write_records", "threads"});
    if (t.contains("count")) s.trajectories.count = unsigned_integer(t.at("count"), p + ".count");
    if (t.contains("seed")) s.trajectories.seed = unsigned_integer(t.at("seed"), p + ".seed");
    if (t.contains("record_stride")) {
      s.trajectories.record_stride = unsigned_integer(t.at("record_stride"), p + ".record_stride");
      require(s.trajectories.record_stride >= 1, p + ".record_stride: must be >= 1");
    }
    if (t.contains("write_records")) {
      s.trajectories.write_records = unsigned_integer(t.at("write_records"), p + ".write_records");
    }
    if (t.contains("threads")) s.trajectories.threads = unsigned_integer(t.at("threads"), p + ".threads");
  }

  if (doc.contains("optimize")) {
    const Json& o = doc.at("optimize");
    object_with_keys(o, "$.optimize", {"objective", "space"});
    s.objective = parse_objective(required(o, "objective", "$.optimize"), "$.optimize.objective");
    s.space = parse_space(required(o, "space", "$.optimize"), "$.optimize.space");
  }

  if (doc.contains("ergotropy")) {
    const Json& e = doc.at("ergotropy");
    object_with_keys(e, "$.ergotropy", {"alpha_mag", "theta"});
    s.ergotropy_alpha = number_array(required(e, "alpha_mag", "$.ergotropy"), "$.ergotropy.alpha_mag");
    for (std::size_t i = 0; i < s.ergotropy_alpha.size(); ++i) {
      require(s.ergotropy_alpha[i] >= 0.0,
              "$.ergotropy.alpha_mag[" + std::to_string(i) + "]: must be >= 0");
    }
    if (e.contains("theta")) s.ergotropy_theta = number(e.at("theta"), "$.ergotropy.theta");
  }

  if (doc.contains("lit_check")) {
    const Json& c = doc.at("lit_check");
    object_with_keys(c, "$.lit_check", {"strategy_b", "tolerance"});
    if (c.contains("strategy_b")) {
      s.strategy_b = at_path("$.lit_check.strategy_b", [&] {
        return strategy_from_json(c.at("strategy_b"), "$.lit_check.strategy_b");
      });
    }
    if (c.contains("tolerance")) s.tolerance = positive(c.at("tolerance"), "$.lit_check.tolerance");
  }

  if (doc.contains("fig1")) {
    const Json& f = doc.at("fig1");
    const std::string p = "$.fig1";
    object_with_keys(f, p, {"beta0", "alpha_mag", "constant_theta0", "locked_rate"});
    if (f.contains("beta0")) s.fig1.beta0 = positive(f.at("beta0"), p + ".beta0");
    if (f.contains("alpha_mag")) {
      s.fig1.alpha_mag = number(f.at("alpha_mag"), p + ".alpha_mag");
      require(s.fig1.alpha_mag >= 0.0, p + ".alpha_mag: must be >= 0");
    }
    if (f.contains("constant_theta0")) {
      s.fig1.constant_theta0 = number(f.at("constant_theta0"), p + ".constant_theta0");
    }
    if (f.contains("locked_rate")) s.fig1.locked_rate = number(f.at("locked_rate"), p + ".locked_rate");
  }

  // Per-kind requirements.
  const std::string k = "$ (kind " + kind_name + ")";
  switch (s.kind) {
    case RunKind::kEvolve:
      require(has_system, k + ": needs \"model\" or \"strategy\"");
      require(s.initial_state.has_value(), "$.initial_state: required for evolve");
      require(s.grid.has_value(), "$.time: required for evolve");
      break;
    case RunKind::kFlux:
      require(has_system, k + ": needs \"model\" or \"strategy\"");
      require(s.initial_state.has_value(), "$.initial_state: required for flux");
      require(s.grid.has_value(), "$.time: required for flux");
      require(s.qubit_lit || s.general_lit, "$.lit: required for flux");
      break;
    case RunKind::kErgotropy:
      require(s.model.has_value(), "$.model: required for ergotropy");
      require(!s.ergotropy_alpha.empty(), "$.ergotropy.alpha_mag: required and non-empty");
      break;
    case RunKind::kTrajectories:
      require(has_system, k + ": needs \"model\" or \"strategy\"");
      require(s.initial_state.has_value(), "$.initial_state: required for trajectories");
      require(s.grid.has_value(), "$.time: required for trajectories");
      require(s.trajectories.count > 0, "$.trajectories.count: empty ensemble");
      break;
    case RunKind::kOptimize:
      require(s.model.has_value(), "$.model: required for optimize");
      require(s.initial_state.has_value(), "$.initial_state: required for optimize");
      require(s.grid.has_value(), "$.time: required for optimize");
      require(s.objective.has_value(), "$.optimize: required for optimize");
      at_path("$.optimize.objective", [&] {
        s.objective->validate(*s.grid);
        return 0;
      });
      break;
    case RunKind::kFig1:
      require(!s.strategy, "$.strategy: fig1 runs on the thermal qubit model only");
      if (s.model) s.fig1.model = *s.model;
      if (s.grid) {
        s.fig1.grid = *s.grid;
        if (doc.at("time").contains("output_stride")) s.fig1.output_stride = s.output_stride;
      }
      break;
    case RunKind::kLitCheck:
      require(has_system, k + ": needs \"model\" or \"strategy\"");
      require(s.strategy_b || s.general_lit || s.qubit_lit,
              "$.lit_check.strategy_b: give a second strategy or a \"lit\" to apply");
      if (s.strategy_b) {
        require(s.strategy_b->dim() == base->dim(),
                "$.lit_check.strategy_b: system dimension differs from the first strategy");
      }
      break;
  }
  return s;
}

// --- output helpers --------------------------------------------------------

namespace {

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
      : out_(path), path_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      out_ << (i ? "," : "") << format_double(values[i]);
    }
    out_ << '\n';
  }

  void raw_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

  ~CsvWriter() = default;

  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("failed writing " + path_.string());
  }

 private:
  std::ofstream out_;
  std::filesystem::path path_;
};

std::vector<std::string> rho_header(std::size_t d) {
  std::vector<std::string> h;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const std::string base = "rho_" + std::to_string(i) + std::to_string(j);
      h.push_back(base + "_re");
      h.push_back(base + "_im");
    }
  }
  return h;
}

void append_rho(std::vector<double>& row, const ComplexMatrix& rho) {
  for (const auto& z : rho.entries()) {
    row.push_back(z.real());
    row.push_back(z.imag());
  }
}

bool on_stride(std::size_t k, std::size_t last, std::size_t stride) {
  return k % stride == 0 || k == last;
}

RunResult run_evolve(const Scenario& s, const std::filesystem::path& dir) {
  const Strategy base = s.base_strategy();
  const DensityMatrix rho0 = s.initial_state->build(base.hamiltonian());
  const auto states = evolve(base, rho0, *s.grid);

  std::optional<std::vector<StateSample>> transformed;
  if (auto lit = s.lit_schedule()) {
    transformed = evolve(transformed_schedule(base, *lit), rho0, *s.grid);
  }

  auto header = rho_header(base.dim());
  header.insert(header.begin(), "t");
  header.push_back("trace");
  header.push_back("energy");
  if (transformed) header.push_back("trace_distance_transformed");
  CsvWriter csv(dir / "evolution.csv", header);
  double worst = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    double td = 0.0;
    if (transformed) {
      td = trace_distance(states[k].rho, (*transformed)[k].rho);
      worst = std::max(worst, td);
    }
    if (!on_stride(k, states.size() - 1, s.output_stride)) continue;
    std::vector<double> row{states[k].t};
    append_rho(row, states[k].rho.matrix());
    row.push_back(states[k].rho.matrix().trace().real());
    row.push_back(internal_energy(base.hamiltonian(), states[k].rho));
    if (transformed) row.push_back(td);
    csv.row(row);
  }
  csv.close();
  std::string summary = "evolved " + std::to_string(states.size() - 1) + " steps";
  if (transformed) summary += "; max trace distance to LIT-transformed run " + format_double(worst);
  return {{"evolution.csv"}, summary};
}

RunResult run_flux(const Scenario& s, const std::filesystem::path& dir) {
  const Strategy base = s.base_strategy();
  const DensityMatrix rho0 = s.initial_state->build(base.hamiltonian());
  const auto states = evolve(base, rho0, *s.grid);
  const LITSchedule lit = *s.lit_schedule();
  const StrategySchedule transformed = transformed_schedule(base, lit);

  std::vector<std::string> header{"t", "power_base", "power_transformed", "delta_flux_general"};
  if (s.qubit_lit) header.push_back("delta_flux_qubit");
  header.push_back("energy_base");
  header.push_back("energy_transformed");
  CsvWriter csv(dir / "flux.csv", header);
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (!on_stride(k, states.size() - 1, s.output_stride)) continue;
    const double t = states[k].t;
    const auto& rho = states[k].rho;
    const Strategy at = transformed.at(t);
    std::vector<double> row{t, energy_flux(base, rho, t).power,
                            energy_flux(transformed, rho, t).power,
                            delta_flux_general(base, lit, rho, t)};
    if (s.qubit_lit) row.push_back(delta_flux_qubit(*s.qubit_lit, *s.model, rho, t));
    row.push_back(internal_energy(base.hamiltonian(), rho));
    row.push_back(internal_energy(at.hamiltonian(), rho));
    csv.row(row);
  }
  csv.close();
  return {{"flux.csv"}, "flux series over " + std::to_string(states.size()) + " grid points"};
}

RunResult run_ergotropy(const Scenario& s, const std::filesystem::path& dir) {
  const QubitThermalModel& m = *s.model;
  const DensityMatrix rho_as = m.gibbs();
  CsvWriter csv(dir / "ergotropy.csv",
                {"alpha_mag", "G", "ergotropy_closed_form", "ergotropy_general",
                 "passive_energy", "internal_energy"});
  for (double a : s.ergotropy_alpha) {
    const Complex alpha = std::polar(a, s.ergotropy_theta);
    const auto eig = qubit_hprime_eigensystem(alpha, m.omega());
    const HermitianOperator h_prime(m.hamiltonian().matrix() + qubit_delta_h(alpha).matrix());
    const auto report = ergotropy(h_prime, rho_as);
    csv.row({a, eig.g, qubit_asymptotic_ergotropy(alpha, m), report.value,
             report.passive_energy, report.internal_energy});
  }
  csv.close();
  return {{"ergotropy.csv"},
          "asymptotic ergotropy at " + std::to_string(s.ergotropy_alpha.size()) + " |alpha| values"};
}

RunResult run_trajectories(const Scenario& s, const std::filesystem::path& dir) {
  const Strategy base = s.base_strategy();
  const DensityMatrix rho0 = s.initial_state->build(base.hamiltonian());
  const auto reference = evolve(base, rho0, *s.grid);

  const auto lit = s.lit_schedule();
  const StrategySchedule schedule =
      lit ? transformed_schedule(base, *lit) : StrategySchedule::constant(base);
  EnsembleOptions opts;
  opts.count = s.trajectories.count;
  opts.base_seed = s.trajectories.seed;
  opts.record_stride = s.trajectories.record_stride;
  opts.threads = s.trajectories.threads;
  opts.keep_records = s.trajectories.write_records;
  const EnsembleResult ens = run_ensemble(schedule, rho0, *s.grid, opts);

  RunResult result;
  auto header = rho_header(base.dim());
  header.insert(header.begin(), "t");
  header.push_back("trace_distance");
  CsvWriter csv(dir / "ensemble.csv", header);
  double worst = 0.0;
  const std::size_t last = reference.size() - 1;
  for (std::size_t i = 0; i < ens.average.size(); ++i) {
    const std::size_t k = std::min(i * s.trajectories.record_stride, last);
    const double td = trace_distance(ens.average[i].rho, reference[k].rho);
    worst = std::max(worst, td);
    std::vector<double> row{ens.average[i].t};
    append_rho(row, ens.average[i].rho.matrix());
    row.push_back(td);
    csv.row(row);
  }
  csv.close();
  result.files.push_back("ensemble.csv");

  for (std::size_t r = 0; r < ens.kept.size(); ++r) {
    const auto& rec = ens.kept[r];
    const std::string name = "trajectory_" + std::to_string(r) + ".csv";
    std::vector<std::string> h{"t", "outcome"};
    for (std::size_t i = 0; i < base.dim(); ++i) {
      h.push_back("psi_" + std::to_string(i) + "_re");
      h.push_back("psi_" + std::to_string(i) + "_im");
    }
    CsvWriter tcsv(dir / name, h);
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
      std::vector<std::string> cells{format_double(rec.times[k]), std::to_string(rec.outcomes[k])};
      for (const auto& z : rec.states[k].amplitudes()) {
        cells.push_back(format_double(z.real()));
        cells.push_back(format_double(z.imag()));
      }
      tcsv.raw_row(cells);
    }
    tcsv.close();
    result.files.push_back(name);
  }
  result.summary = std::to_string(opts.count) + " trajectories; max trace distance to " +
                   "deterministic evolution " + format_double(worst);
  return result;
}

RunResult run_optimize(const Scenario& s, const std::filesystem::path& dir) {
  const QubitThermalModel& m = *s.model;
  const DensityMatrix rho0 = s.initial_state->build(m.hamiltonian());
  const SearchResult res = grid_search(*s.objective, *s.space, m, rho0, *s.grid);
  CsvWriter csv(dir / "search.csv", {"alpha_mag", "theta0", "theta_rate", "objective", "is_best"});
  for (const auto& row : res.table) {
    csv.raw_row({format_double(row.params.alpha_mag), format_double(row.params.theta0),
                 format_double(row.params.theta_rate), format_double(row.objective),
                 row.is_best ? "1" : "0"});
  }
  csv.close();
  return {{"search.csv"},
          "best objective " + format_double(res.best_value) + " at alpha_mag=" +
              format_double(res.best.alpha_mag) + " theta0=" + format_double(res.best.theta0) +
              " theta_rate=" + format_double(res.best.theta_rate)};
}

RunResult run_lit_check(const Scenario& s, const std::filesystem::path& dir) {
  const Strategy a = s.base_strategy();
  Strategy b = a;
  if (s.strategy_b) {
    b = *s.strategy_b;
  } else {
    b = apply_lit(a, s.lit_schedule()->params_of_t(0.0));
  }
  const auto check = verify_invariance(a, b, s.tolerance);
  CsvWriter csv(dir / "lit_check.csv", {"invariant", "max_deviation", "tolerance"});
  csv.raw_row({check.invariant ? "1" : "0", format_double(check.max_deviation),
               format_double(s.tolerance)});
  csv.close();
  return {{"lit_check.csv"}, std::string(check.invariant ? "invariant" : "NOT invariant") +
                                 ", max superoperator deviation " +
                                 format_double(check.max_deviation)};
}

void write_manifest(const Scenario& s, const std::filesystem::path& dir,
                    const std::vector<std::string>& files) {
  Json manifest;
  manifest["litsim_manifest"] = 1;
  manifest["code_version"] = kVersion;
  manifest["scenario"] = s.config;
  manifest["seeds"] = {{"base_seed", s.trajectories.seed},
                       {"stream_rule", "seed_k = base_seed xor k"}};
  manifest["tolerances"] = {
      {"hermitian", HermitianOperator::kTolerance},
      {"density_trace", DensityMatrix::kTraceTolerance},
      {"density_positivity", DensityMatrix::kPositivityTolerance},
      {"trace_renormalize_limit", kTraceRenormalizeLimit},
      {"lit_unitarity", LITParams::kUnitarityTolerance},
      {"lit_check", s.tolerance},
      {"max_jump_probability_per_step", kMaxJumpProbabilityPerStep}};
  manifest["outputs"] = files;
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing manifest.json");
}

}  // namespace

RunResult run_scenario(const Scenario& s, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  RunResult result;
  switch (s.kind) {
    case RunKind::kEvolve:
      result = run_evolve(s, out_dir);
      break;
    case RunKind::kFlux:
      result = run_flux(s, out_dir);
      break;
    case RunKind::kErgotropy:
      result = run_ergotropy(s, out_dir);
      break;
    case RunKind::kTrajectories:
      result = run_trajectories(s, out_dir);
      break;
    case RunKind::kOptimize:
      result = run_optimize(s, out_dir);
      break;
    case RunKind::kFig1:
      result.files = run_fig1(s.fig1, out_dir);
      result.summary = "wrote the four-strategy flux and energy series";
      break;
    case RunKind::kLitCheck:
      result = run_lit_check(s, out_dir);
      break;
  }
  write_manifest(s, out_dir, result.files);
  result.files.push_back("manifest.json");
  return result;
}

// --- four-strategy comparison ---------------------------------------------

Fig1Data compute_fig1(const Fig1Settings& settings) {
  const QubitThermalModel& m = settings.model;
  const DensityMatrix rho0(boltzmann_pure_state(m.hamiltonian(), settings.beta0));
  const EvolutionCache cache(m, rho0, settings.grid);

  const double lock = -std::arg(rho0(qubit::kGround, qubit::kExcited));
  const double a = settings.alpha_mag;
  Fig1Data data{cache.states(),
                {{{"alpha0", {0.0, 0.0, 0.0}, {}, {}},
                  {"constant_phase", {a, settings.constant_theta0, 0.0}, {}, {}},
                  {"constructive", {a, lock, settings.locked_rate}, {}, {}},
                  {"destructive", {a, lock + std::numbers::pi, settings.locked_rate}, {}, {}}}},
                internal_energy(m.hamiltonian(), m.gibbs())};
  for (auto& curve : data.curves) {
    const LITSchedule lit = qubit_lit_schedule(curve.params, m);
    curve.flux.reserve(data.states.size());
    curve.energy.reserve(data.states.size());
    for (std::size_t k = 0; k < data.states.size(); ++k) {
      curve.flux.push_back(transformed_flux_at(cache, lit, k));
      curve.energy.push_back(transformed_energy_at(cache, lit, k));
    }
  }
  return data;
}

std::vector<std::string> run_fig1(const Fig1Settings& settings,
                                  const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const Fig1Data data = compute_fig1(settings);
  const std::size_t last = data.states.size() - 1;

  std::vector<std::string> curve_names;
  for (const auto& c : data.curves) curve_names.push_back(c.name);

  auto series_header = [&](const std::string& prefix) {
    std::vector<std::string> h{"t"};
    for (const auto& n : curve_names) h.push_back(prefix + "_" + n);
    return h;
  };
  CsvWriter flux(out_dir / "fig1_flux.csv", series_header("flux"));
  CsvWriter energy(out_dir / "fig1_energy.csv", series_header("energy"));
  CsvWriter state(out_dir / "fig1_state.csv",
                  {"t", "rho_gg", "rho_ee", "rho_ge_re", "rho_ge_im"});
  for (std::size_t k = 0; k < data.states.size(); ++k) {
    if (!on_stride(k, last, settings.output_stride)) continue;
    const double t = data.states[k].t;
    std::vector<double> frow{t};
    std::vector<double> erow{t};
    for (const auto& c : data.curves) {
      frow.push_back(c.flux[k]);
      erow.push_back(c.energy[k]);
    }
    flux.row(frow);
    energy.row(erow);
    const auto& rho = data.states[k].rho;
    const Complex ge = rho(qubit::kGround, qubit::kExcited);
    state.row({t, rho(qubit::kGround, qubit::kGround).real(),
               rho(qubit::kExcited, qubit::kExcited).real(), ge.real(), ge.imag()});
  }
  flux.close();
  energy.close();
  state.close();

  CsvWriter strategies(out_dir / "fig1_strategies.csv",
                       {"name", "alpha_mag", "theta0", "theta_rate", "asymptotic_energy"});
  for (const auto& c : data.curves) {
    strategies.raw_row({c.name, format_double(c.params.alpha_mag), format_double(c.params.theta0),
                        format_double(c.params.theta_rate),
                        format_double(data.asymptotic_energy)});
  }
  strategies.close();
  return {"fig1_flux.csv", "fig1_energy.csv", "fig1_state.csv", "fig1_strategies.csv"};
}

}  // namespace litsim
