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

// litsim command-line driver. Each subcommand reads a JSON scenario, runs it
// and writes CSV data plus manifest.json into the output directory.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 1 anything else (I/O, usage).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "litsim/scenario.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  bool quiet = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(litsim::RunKind kind, const Options& opts) {
  litsim::Json doc = litsim::Json::object();
  if (!opts.config.empty()) {
    try {
      doc = litsim::Json::parse(read_file(opts.config));
    } catch (const litsim::Json::parse_error& e) {
      throw litsim::ConfigError(std::string("$: malformed JSON: ") + e.what());
    }
  } else if (kind != litsim::RunKind::kFig1) {
    throw litsim::ConfigError("$: --config is required for this subcommand");
  }
  litsim::Overrides ov;
  ov.kind = kind;
  ov.seed = opts.seed;
  ov.dt = opts.dt;
  if (!opts.out.empty()) ov.output_dir = opts.out;
  doc = litsim::apply_overrides(std::move(doc), ov);

  const litsim::Scenario s = litsim::parse_scenario_json(doc);
  const std::string out = s.output_dir.empty() ? "litsim_out" : s.output_dir;
  const auto result = litsim::run_scenario(s, out);
  if (!opts.quiet) {
    std::cout << litsim::to_string(kind) << ": " << result.summary << '\n';
    for (const auto& f : result.files) std::cout << "  " << out << '/' << f << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-system qubit simulator with Lindbladian invariance transformations"};
  app.set_version_flag("--version", litsim::kVersion);
  app.require_subcommand(1);

  Options opts;
  struct Sub {
    litsim::RunKind kind;
    const char* help;
  };
  const Sub subs[] = {
      {litsim::RunKind::kEvolve, "Integrate the master equation"},
      {litsim::RunKind::kFlux, "Energy flux of a strategy and its LIT transform"},
      {litsim::RunKind::kErgotropy, "Asymptotic ergotropy versus |alpha|"},
      {litsim::RunKind::kTrajectories, "Quantum-jump ensemble"},
      {litsim::RunKind::kOptimize, "Grid search over qubit LIT parameters"},
      {litsim::RunKind::kFig1, "Four-strategy flux and energy comparison"},
      {litsim::RunKind::kLitCheck, "Check whether two strategies share a generator"},
  };
  std::optional<litsim::RunKind> chosen;
  std::uint64_t seed = 0;
  double dt = 0.0;
  for (const auto& sub : subs) {
    auto* cmd = app.add_subcommand(std::string(litsim::to_string(sub.kind)), sub.help);
    cmd->add_option("--config,-c", opts.config, "Scenario or manifest JSON file");
    cmd->add_option("--out,-o", opts.out, "Output directory");
    auto* seed_opt = cmd->add_option("--seed", seed, "Base RNG seed (overrides config)");
    auto* dt_opt = cmd->add_option("--dt", dt, "Time step (overrides config)");
    cmd->add_flag("--quiet,-q", opts.quiet, "Suppress the summary");
    cmd->callback([&, kind = sub.kind, seed_opt, dt_opt] {
      chosen = kind;
      if (seed_opt->count() > 0) opts.seed = seed;
      if (dt_opt->count() > 0) opts.dt = dt;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return run(*chosen, opts);
  } catch (const litsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const litsim::Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
