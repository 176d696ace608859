// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "modent/cli/config.hpp"
#include "modent/cli/report.hpp"
#include "modent/cli/scenarios.hpp"
#include "support.hpp"

namespace modent::cli {
namespace {

const double kTsirelson = 2.0 * std::numbers::sqrt2;
namespace fs = std::filesystem;

ExperimentConfig exact(Scenario s) {
  auto c = ExperimentConfig::defaults(s);
  c.exact = true;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("modent_test_" + name);
  fs::remove_all(p);
  return p;
}

TEST(Photon, DefaultExactReachesTsirelson) {
  const auto r = run_photon_scenario(exact(Scenario::photon));
  ASSERT_EQ(r.stages.size(), 3u);
  EXPECT_NEAR(r.stages[0].bits, 0.0, 1e-12);
  EXPECT_NEAR(r.stages[1].bits, 1.0, 1e-10);
  EXPECT_NEAR(r.stages[2].bits, 1.0, 1e-10);
  ASSERT_TRUE(r.chsh);
  EXPECT_NEAR(r.chsh->s, kTsirelson, 1e-6);
  EXPECT_GE(r.details["atom_state_fidelity"].get<double>(), 1.0 - 1e-12);
}

TEST(Photon, NoSplittingNoViolation) {
  auto c = exact(Scenario::photon);
  c.beam_splitter_theta = 0.0;
  const auto r = run_photon_scenario(c);
  EXPECT_NEAR(r.stages[1].bits, 0.0, 1e-12);
  EXPECT_LE(r.chsh->s, 2.0 + 1e-9);
}

TEST(Photon, SampledRunsAreBitwiseReproducible) {
  auto c = ExperimentConfig::defaults(Scenario::photon);
  c.shots = 20000;
  c.seed = 99;
  c.out = "unused";  // keeps shot records
  const auto a = run_photon_scenario(c);
  c.workers = 3;
  const auto b = run_photon_scenario(c);
  EXPECT_EQ(shots_csv(a.chsh->records), shots_csv(b.chsh->records));
  EXPECT_EQ(a.chsh->s, b.chsh->s);
  EXPECT_EQ(a.config_hash, b.config_hash);
  c.seed = 100;
  EXPECT_NE(shots_csv(run_photon_scenario(c).chsh->records), shots_csv(a.chsh->records));
}

TEST(Atom, ReferenceOf32ViolatesAndTrapsFactorOut) {
  const auto r = run_atom_scenario(exact(Scenario::atom));
  for (const auto& s : r.stages) EXPECT_NEAR(s.bits, 1.0, 1e-10) << s.stage;
  EXPECT_NEAR(r.details["trap_purity"].get<double>(), 1.0, 1e-10);
  EXPECT_GT(r.chsh->s, 2.0);
  EXPECT_LT(r.chsh->s, kTsirelson);
  ASSERT_EQ(r.sweep.size(), 6u);
  EXPECT_TRUE(r.details["sweep_nondecreasing"].get<bool>());
  EXPECT_FALSE(r.details["violation_threshold"].is_null());
}

TEST(Atom, StarkPhaseMovesAnglesNotTheMaximum) {
  auto c = exact(Scenario::atom);
  c.reservoir.sweep.clear();
  c.capability = Capability::full;
  c.reference = false;
  const auto zero = run_atom_scenario(c);
  c.stark_phase = std::numbers::pi;
  const auto pi = run_atom_scenario(c);
  EXPECT_NEAR(zero.chsh->s, kTsirelson, 1e-6);
  EXPECT_NEAR(zero.chsh->s, pi.chsh->s, 1e-6);
  const auto& qa = zero.chsh->angles;
  const auto& qb = pi.chsh->angles;
  EXPECT_GT(std::abs(qa.b - qb.b) + std::abs(qa.b_prime - qb.b_prime), 0.1);
}

TEST(Atom, SuperselectedWithoutReferenceIsClassical) {
  auto c = exact(Scenario::atom);
  c.reference = false;
  const auto r = run_atom_scenario(c);
  EXPECT_LE(std::abs(r.chsh->s), 2.0 + 1e-9);
  EXPECT_TRUE(r.details["exhaustive_scan"].get<bool>());
  EXPECT_TRUE(r.sweep.empty());
}

TEST(Atom, IllegalExplicitAnglesRejected) {
  auto c = exact(Scenario::atom);
  c.reference = false;
  c.angles.optimized = false;
  EXPECT_THROW((void)run_atom_scenario(c), SuperselectionError);
}

TEST(Atom, TooSmallReservoirCutoffIsASectorError) {
  auto c = exact(Scenario::atom);
  c.reservoir.cutoff = 64;
  EXPECT_THROW((void)run_atom_scenario(c), SectorError);
}

TEST(Atom, FockReservoirGivesNoViolation) {
  auto c = exact(Scenario::atom);
  c.reservoir.kind = ReservoirKind::fock;
  c.reservoir.mean_occupation = 4;
  c.reservoir.sweep = {1, 2, 4};
  const auto r = run_atom_scenario(c);
  EXPECT_LE(r.chsh->s, 2.0 + 1e-9);
  for (const auto& p : r.sweep) EXPECT_LE(p.value, 2.0 + 1e-9);
}

TEST(TpsDemo, Defaults) {
  const auto r = run_tps_demo(exact(Scenario::tps_demo));
  ASSERT_EQ(r.stages.size(), 4u);
  EXPECT_NEAR(r.stages[0].bits, 1.0, 1e-10);
  EXPECT_LT(r.stages[1].bits, 1e-10);
  EXPECT_NEAR(r.stages[2].bits, 1.0, 1e-10);
  EXPECT_LT(r.stages[3].bits, 1e-10);
  EXPECT_EQ(r.details["factorized"].get<int>(), 20);
  EXPECT_LT(r.details["largest_residual_coefficient"].get<double>(), 1e-8);
}

TEST(TpsDemo, PrimeDimensionRejectedCleanly) {
  auto c = exact(Scenario::tps_demo);
  c.tps = {5, 1, 5, 3};
  try {
    (void)run_tps_demo(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("nonprime dimension d = mn"), std::string::npos);
  }
  c.tps = {12, 3, 4, 5};
  EXPECT_EQ(run_tps_demo(c).details["factorized"].get<int>(), 5);
}

TEST(OscillatorDemo, UncoupledAndHalfCoupling) {
  auto c = exact(Scenario::oscillator_demo);
  c.oscillator.coupling_ratio = 0.0;
  c.oscillator.sweep = {0.0};
  auto r = run_oscillator_demo(c);
  EXPECT_NEAR(r.stages[0].bits, 0.0, 1e-10);
  EXPECT_NEAR(r.stages[1].bits, 0.0, 1e-10);
  c.oscillator.coupling_ratio = 0.5;
  r = run_oscillator_demo(c);
  EXPECT_NEAR(r.stages[0].bits, test::squeezing_entropy(1.0, 1.0, 0.5), 1e-3);
  EXPECT_LT(r.stages[1].bits, 1e-6);
}

TEST(OscillatorDemo, SweepMonotone) {
  const auto r = run_oscillator_demo(exact(Scenario::oscillator_demo));
  ASSERT_GE(r.sweep.size(), 2u);
  for (std::size_t k = 1; k < r.sweep.size(); ++k) EXPECT_GT(r.sweep[k].value, r.sweep[k - 1].value);
  EXPECT_TRUE(r.details["sweep_increasing_in_abs_coupling"].get<bool>());
}

TEST(OscillatorDemo, InstabilityRejected) {
  auto c = exact(Scenario::oscillator_demo);
  c.oscillator.sweep = {0.2, 1.0};
  EXPECT_THROW((void)run_oscillator_demo(c), SectorError);
}

TEST(Config, HashStableAndSensitive) {
  const auto base = ExperimentConfig::defaults(Scenario::atom);
  EXPECT_EQ(config_hash(base), config_hash(ExperimentConfig::defaults(Scenario::atom)));
  EXPECT_NE(config_hash(base), config_hash(ExperimentConfig::defaults(Scenario::photon)));
  std::vector<ExperimentConfig> variants(12, base);
  variants[0].shots += 1;
  variants[1].seed += 1;
  variants[2].exact = true;
  variants[3].capability = Capability::full;
  variants[4].reference = false;
  variants[5].stark_phase = 0.5;
  variants[6].reservoir.mean_occupation = 8;
  variants[7].reservoir.cutoff = 90;
  variants[8].reservoir.sweep.push_back(64);
  variants[9].angles.optimized = false;
  variants[10].oscillator.cutoff = 30;
  variants[11].tps.random_states = 3;
  for (const auto& v : variants) EXPECT_NE(config_hash(v), config_hash(base));
  auto cosmetic = base;
  cosmetic.out = "elsewhere";
  cosmetic.emit_gnuplot = true;
  cosmetic.workers = 8;
  EXPECT_EQ(config_hash(cosmetic), config_hash(base));
}

TEST(Config, PrintedConfigRoundTrips) {
  auto c = ExperimentConfig::defaults(Scenario::atom);
  c.reservoir.cutoff = 100;
  c.angles.quadruple = {0.1, 0.2, 0.3, 0.4};
  c.stark_phase = 1.25;
  auto d = ExperimentConfig::defaults(Scenario::atom);
  merge(d, to_json(c));
  EXPECT_EQ(to_json(d), to_json(c));
}

TEST(Config, StrictFieldErrors) {
  auto c = ExperimentConfig::defaults(Scenario::photon);
  const auto message = [&](const char* text) -> std::string {
    try {
      merge(c, Json::parse(text));
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message(R"({"reservoir": {"mean": 3}})").find("reservoir.mean"), std::string::npos);
  EXPECT_NE(message(R"({"shots": "many"})").find("shots"), std::string::npos);
  EXPECT_NE(message(R"({"scenario": "atom"})").find("scenario"), std::string::npos);
  EXPECT_NE(message(R"({"angles": {"source": "random"}})").find("angles.source"), std::string::npos);
  EXPECT_NE(message(R"({"reservoir": {"cutoff": "big"}})").find("reservoir.cutoff"),
            std::string::npos);
  auto bad = ExperimentConfig::defaults(Scenario::photon);
  bad.shots = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = ExperimentConfig::defaults(Scenario::photon);
  bad.stark_phase = 7.0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(Artifacts, WrittenAndByteIdentical) {
  auto c = ExperimentConfig::defaults(Scenario::atom);
  c.shots = 5000;
  c.reservoir.sweep = {1, 2};
  const fs::path d1 = scratch("a1");
  const fs::path d2 = scratch("a2");
  c.out = d1.string();
  write_artifacts(run_atom_scenario(c), c.out, true);
  c.out = d2.string();
  write_artifacts(run_atom_scenario(c), c.out, true);
  for (const char* f : {"shots.csv", "sweep.csv", "plot.gp"}) {
    ASSERT_TRUE(fs::exists(d1 / f)) << f;
    EXPECT_EQ(slurp(d1 / f), slurp(d2 / f)) << f;
  }
  EXPECT_EQ(slurp(d1 / "shots.csv").substr(0, 35), "shot,a,b,outcome1,outcome2,product\n");
  EXPECT_EQ(slurp(d1 / "sweep.csv").substr(0, 16), "parameter,value\n");
  auto r1 = Json::parse(slurp(d1 / "report.json"));
  auto r2 = Json::parse(slurp(d2 / "report.json"));
  r1.erase("wall_seconds");
  r2.erase("wall_seconds");
  EXPECT_EQ(r1, r2);
  fs::remove_all(d1);
  fs::remove_all(d2);
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(MODENT_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  fs::create_directories(dir);
  const auto write = [&](const char* name, const char* text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  EXPECT_EQ(run_cli("tps"), 0);
  EXPECT_EQ(run_cli("photon --print-config"), 0);
  EXPECT_EQ(run_cli("photon --exact --shots 0"), 2);
  EXPECT_EQ(run_cli("photon --no-such-flag"), 2);
  EXPECT_EQ(run_cli("tps --config " + write("prime.json", R"({"tps": {"dimension": 5}})")), 2);
  EXPECT_EQ(run_cli("atom --exact --config " +
                    write("cut.json", R"({"reservoir": {"cutoff": 64}, "scenario": "atom"})")),
            3);
  EXPECT_EQ(run_cli("oscillator --config " +
                    write("osc.json", R"({"oscillator": {"coupling_ratio": 1.5}})")),
            3);
  EXPECT_EQ(run_cli("photon --shots 1000 --out " + (dir / "run").string() + " --emit-gnuplot"), 0);
  EXPECT_TRUE(fs::exists(dir / "run" / "plot.gp"));
  fs::remove_all(dir);
}

}  // namespace
}  // namespace modent::cli
