// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

// modent: scenario runner.
//
//   modent photon|atom|tps|oscillator [--config FILE] [--seed N] [--shots N]
//          [--exact] [--out DIR] [--print-config] [--emit-gnuplot]
//
// Exit codes: 0 ok, 2 configuration error, 3 physics-sector error,
// 4 internal invariant breach.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "modent/cli/config.hpp"
#include "modent/cli/report.hpp"
#include "modent/cli/scenarios.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSector = 3;
constexpr int kExitInvariant = 4;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  bool exact{false};
  std::optional<std::string> out;
  bool print_config{false};
  bool emit_gnuplot{false};
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
  cmd.add_option("--seed", f.seed, "root seed of the shot streams");
  cmd.add_option("--shots", f.shots, "shots per correlator (sampled mode)");
  cmd.add_flag("--exact", f.exact, "evaluate correlators exactly instead of sampling");
  cmd.add_option("--out", f.out, "output directory for report.json and CSV files");
  cmd.add_flag("--print-config", f.print_config, "print the effective config and exit");
  cmd.add_flag("--emit-gnuplot", f.emit_gnuplot, "also write plot.gp next to the CSV files");
}

int run(modent::cli::Scenario scenario, const Flags& f) {
  using namespace modent::cli;
  ExperimentConfig c = ExperimentConfig::defaults(scenario);
  if (!f.config.empty()) merge(c, read_json_file(f.config));
  if (f.seed) c.seed = *f.seed;
  if (f.shots) c.shots = *f.shots;
  if (f.exact) c.exact = true;
  if (f.out) c.out = *f.out;
  if (f.emit_gnuplot) c.emit_gnuplot = true;
  if (f.print_config) {
    std::cout << to_json(c).dump(2) << "\n";
    return 0;
  }
  c.validate();
  const RunReport report = run_scenario(c);
  if (!c.out.empty()) write_artifacts(report, c.out, c.emit_gnuplot);
  std::cout << to_json(report).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using modent::cli::Scenario;
  CLI::App app{"Single-particle entanglement: scenario runner"};
  app.require_subcommand(1);
  Flags flags;
  std::optional<Scenario> chosen;
  const std::pair<const char*, Scenario> commands[] = {
      {"photon", Scenario::photon},
      {"atom", Scenario::atom},
      {"tps", Scenario::tps_demo},
      {"oscillator", Scenario::oscillator_demo},
  };
  const char* help[] = {
      "single photon split into two paths, transferred to two atoms",
      "single A atom shared by two traps, read as atom/molecule in two beams",
      "entanglement relative to the tensor product structure",
      "coupled oscillators: original vs normal-mode bipartition",
  };
  for (std::size_t k = 0; k < std::size(commands); ++k) {
    auto* cmd = app.add_subcommand(commands[k].first, help[k]);
    add_flags(*cmd, flags);
    const Scenario s = commands[k].second;
    cmd->callback([&chosen, s] { chosen = s; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  try {
    return run(*chosen, flags);
  } catch (const modent::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const modent::SectorError& e) {
    std::cerr << "sector error: " << e.what() << "\n";
    return kExitSector;
  } catch (const modent::InvariantError& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}
