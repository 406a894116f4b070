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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "litsim/scenario.hpp"
#include "support.hpp"

using namespace litsim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("litsim_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const char* kTrajectories = R"({
  "kind": "trajectories",
  "model": {"omega": 1.0, "gamma0": 0.5, "beta_f": 1.0},
  "initial_state": {"type": "pure", "re": [0.6, 0.8], "im": [0.0, 0.0]},
  "time": {"t_max": 1.0, "dt": 0.001, "output_stride": 100},
  "trajectories": {"count": 40, "seed": 7, "record_stride": 100, "write_records": 2}
})";

}  // namespace

TEST_CASE("matrix and strategy JSON round trip") {
  testsupport::Random rng(61);
  const auto s = rng.strategy(3, 2).with_label("demo");
  const auto back = strategy_from_json(to_json(s), "$");
  CHECK(strategy_distance(s, back) == 0.0);
  CHECK(back.label() == "demo");

  const auto p = rng.lit(2);
  const auto q = lit_params_from_json(to_json(p), "$");
  CHECK(q.u() == p.u());
  CHECK(q.gamma() == p.gamma());
  CHECK(q.phi() == p.phi());
}

TEST_CASE("parse_scenario: fig1 defaults") {
  const Scenario s = parse_scenario(R"({"kind": "fig1"})");
  CHECK(s.kind == RunKind::kFig1);
  CHECK(s.fig1.model.gamma0() == 1e-2);
  CHECK(s.fig1.model.beta_f() == 1.0);
  CHECK(s.fig1.beta0 == 5.0);
  CHECK(s.fig1.alpha_mag == 0.1);
  CHECK(s.fig1.locked_rate == -1.0);
}

TEST_CASE("parse_scenario: path-precise errors") {
  CHECK(config_error(R"({"kind": "ergotropy", "model": {"omega": 1, "gamma0": -0.1, "beta_f": 1},
                         "ergotropy": {"alpha_mag": [1]}})")
            .starts_with("$.model.gamma0"));

  const std::string unitary = config_error(R"({
    "kind": "lit-check",
    "model": {"omega": 1, "gamma0": 0.1, "beta_f": 1},
    "lit": {"general": {"U": {"dim": 2, "re": [1, 1, 0, 1], "im": [0, 0, 0, 0]},
                        "Gamma": {"re": [0, 0], "im": [0, 0]}}}})");
  CHECK(unitary.starts_with("$.lit.general.U"));
  CHECK(unitary.find("1e-10") != std::string::npos);

  CHECK(config_error(R"({"kind": "fig1", "colour": "red"})") == "$.colour: unknown key");
  CHECK(config_error(R"({"kind": "fig1", "fig1": {"alpha": 1}})") == "$.fig1.alpha: unknown key");
  CHECK(config_error(R"({"kind": "teleport"})").starts_with("$.kind"));
  CHECK(config_error(R"({"kind": "evolve"})").find("model") != std::string::npos);
  CHECK(config_error("{not json").starts_with("$: malformed JSON"));
  CHECK(config_error(R"({"kind": "evolve", "model": {"omega": 1, "gamma0": 0.1, "beta_f": 1},
                         "initial_state": {"type": "pure", "re": [1, 0, 0], "im": [0, 0, 0]},
                         "time": {"t_max": 1, "dt": 0.01}})")
            .starts_with("$.initial_state"));
  CHECK(config_error(R"({"kind": "evolve", "model": {"omega": 1, "gamma0": 0.1, "beta_f": 1},
                         "initial_state": {"type": "gibbs", "beta": 1},
                         "time": {"t_max": -1, "dt": 0.01}})")
            .starts_with("$.time.t_max"));
  CHECK(config_error(R"({"kind": "lit-check",
                         "strategy": {"H": {"dim": 2, "re": [0, 1, 0, 0], "im": [0, 0, 0, 0]}},
                         "lit_check": {"tolerance": 1e-10}})")
            .starts_with("$.strategy.H"));

  std::string empty = kTrajectories;
  empty.replace(empty.find("\"count\": 40"), 11, "\"count\": 0");
  CHECK(config_error(empty).find("empty ensemble") != std::string::npos);
}

TEST_CASE("apply_overrides") {
  Json doc = Json::parse(kTrajectories);
  Overrides o;
  o.kind = RunKind::kTrajectories;
  o.seed = 123;
  o.dt = 0.002;
  o.output_dir = "elsewhere";
  const Json out = apply_overrides(doc, o);
  CHECK(out["trajectories"]["seed"] == 123);
  CHECK(out["time"]["dt"] == 0.002);
  CHECK(out["output"] == "elsewhere");

  o.kind = RunKind::kEvolve;
  CHECK_THROWS_AS(apply_overrides(doc, o), ConfigError);

  // A manifest is unwrapped to its scenario.
  const Json manifest = {{"litsim_manifest", 1}, {"scenario", doc}};
  CHECK(apply_overrides(manifest, {}) == doc);
}

TEST_CASE("run_scenario: trajectories are reproducible") {
  const Scenario s = parse_scenario(kTrajectories);
  const auto a = scratch("traj_a");
  const auto b = scratch("traj_b");
  const auto ra = run_scenario(s, a);
  run_scenario(s, b);
  CHECK(ra.files == std::vector<std::string>{"ensemble.csv", "trajectory_0.csv", "trajectory_1.csv",
                                             "manifest.json"});
  for (const auto& f : ra.files) CHECK(slurp(a / f) == slurp(b / f));

  // Re-running from the manifest reproduces the data files.
  const auto c = scratch("traj_c");
  run_scenario(parse_scenario(slurp(a / "manifest.json")), c);
  for (const auto& f : ra.files) CHECK(slurp(a / f) == slurp(c / f));

  const std::string header = slurp(a / "ensemble.csv").substr(0, 40);
  CHECK(header.starts_with("t,rho_00_re,rho_00_im"));
  const std::string traj = slurp(a / "trajectory_0.csv");
  CHECK(traj.starts_with("t,outcome,psi_0_re,psi_0_im,psi_1_re,psi_1_im\n"));
}

TEST_CASE("run_scenario: ergotropy matches the closed form") {
  const Scenario s = parse_scenario(R"({
    "kind": "ergotropy",
    "model": {"omega": 1.0, "gamma0": 0.01, "beta_f": 1.0},
    "ergotropy": {"alpha_mag": [0.0, 0.5, 1.0]}})");
  const auto dir = scratch("ergo");
  run_scenario(s, dir);
  std::istringstream csv(slurp(dir / "ergotropy.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "alpha_mag,G,ergotropy_closed_form,ergotropy_general,passive_energy,internal_energy");
  int rows = 0;
  while (std::getline(csv, line)) {
    double a, g, closed, general;
    char comma;
    std::istringstream row(line);
    row >> a >> comma >> g >> comma >> closed >> comma >> general;
    CHECK(std::abs(closed - general) <= 1e-10);
    if (a == 1.0) CHECK(std::abs(closed - 0.0957076) < 1e-6);
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("run_scenario: lit-check, evolve, flux and optimize") {
  const char* base = R"("model": {"omega": 1.0, "gamma0": 0.1, "beta_f": 1.0},
    "initial_state": {"type": "boltzmann_pure", "beta": 5.0},
    "time": {"t_max": 5.0, "dt": 0.01, "output_stride": 50},)";

  const auto dir = scratch("kinds");
  auto run = [&](const std::string& body) {
    return run_scenario(parse_scenario("{" + std::string(base) + body + "}"), dir);
  };
  CHECK(run(R"("kind": "lit-check", "lit": {"qubit": {"alpha_mag": 0.5, "theta0": 1.0}})").summary.starts_with("invariant"));
  CHECK(slurp(dir / "lit_check.csv").starts_with("invariant,max_deviation,tolerance\n1,"));

  const auto ev = run(R"("kind": "evolve", "lit": {"qubit": {"alpha_mag": 0.5, "theta_rate": -1.0}})");
  CHECK(ev.files.front() == "evolution.csv");

  run(R"("kind": "flux", "lit": {"qubit": {"alpha_mag": 0.5, "theta_rate": -1.0}})");
  std::istringstream flux(slurp(dir / "flux.csv"));
  std::string line;
  std::getline(flux, line);
  CHECK(line == "t,power_base,power_transformed,delta_flux_general,delta_flux_qubit,energy_base,energy_transformed");
  while (std::getline(flux, line)) {
    double t, p, pp, dg, dq;
    char c;
    std::istringstream row(line);
    row >> t >> c >> p >> c >> pp >> c >> dg >> c >> dq;
    CHECK(std::abs(pp - p - dg) <= 1e-10);
    CHECK(std::abs(dg - dq) <= 1e-9);
  }

  const auto opt = run(R"("kind": "optimize",
    "optimize": {"objective": {"kind": "final_internal_energy", "t": 5.0},
                 "space": {"alpha_mag": [0.0, 0.2], "theta0": [0.0, 3.14159], "theta_rate": [-1.0, 0.0]}})");
  CHECK(opt.files.front() == "search.csv");
  CHECK(slurp(dir / "search.csv").starts_with("alpha_mag,theta0,theta_rate,objective,is_best\n"));

  const Json manifest = Json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["litsim_manifest"] == 1);
  CHECK(manifest["code_version"] == kVersion);
  CHECK(manifest["outputs"][0] == "search.csv");
  CHECK(manifest.contains("tolerances"));
}

TEST_CASE("format_double round trips") {
  testsupport::Random rng(62);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.normal() * std::pow(10.0, rng.uniform(-20, 20));
    CHECK(std::stod(format_double(x)) == x);
  }
}
