// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed here and never loosened.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modent/cli/report.hpp"
#include "modent/cli/scenarios.hpp"
#include "support.hpp"

namespace {

using namespace modent;
using test::cfg;
using test::id;
using test::mode;

constexpr double kPi = std::numbers::pi;
const double kTsirelson = 2.0 * std::numbers::sqrt2;

struct Outcome {
  bool pass{false};
  std::string detail;
};

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome beam_splitter_amplitudes() {
  const ModeRegister reg{{mode(0), mode(1)}};
  const auto in = basis_state(reg, cfg({1, 0}));
  const double h = 1.0 / std::sqrt(2.0);
  constexpr int calls = 1000;
  PureState out = in;
  const Stopwatch clock;
  for (int k = 0; k < calls; ++k) out = beam_splitter(in, id(0), id(1), kPi / 4);
  const double per_call = clock.seconds() / calls;
  const double e10 = std::abs(out.amplitude(reg.rank(cfg({1, 0}))) - h);
  const double e01 = std::abs(std::abs(out.amplitude(reg.rank(cfg({0, 1})))) - h);
  const double err = std::max(e10, e01);
  return {err <= 1e-12 && per_call < 1e-3,
          fmt("max amplitude error %.2e, %.2e ms per call", err, per_call * 1e3)};
}

Outcome photon_pipeline_fidelity() {
  // hand-built target (|eg> + |ge>)/sqrt2 with both paths empty
  const ModeRegister reg{{mode(0), mode(1), mode(2, Species::atom_a), mode(3, Species::atom_a)}};
  const auto target = make_state(reg, {{cfg({0, 0, 1, 0}), 1.0}, {cfg({0, 0, 0, 1}), 1.0}});
  const auto split = beam_splitter(basis_state(reg, cfg({1, 0, 0, 0})), id(0), id(1), kPi / 4);
  const auto atoms = pi_pulse_transfer(pi_pulse_transfer(split, id(0), id(2)), id(1), id(3));
  const double f = fidelity(atoms, target);
  const auto report = cli::run_photon_scenario(cli::ExperimentConfig::defaults(cli::Scenario::photon));
  const double fs = report.details["atom_state_fidelity"].get<double>();
  return {f >= 1.0 - 1e-12 && fs >= 1.0 - 1e-12, fmt("fidelity %.15f (scenario %.15f)", f, fs)};
}

Outcome factorizing_structures() {
  std::mt19937_64 rng(2026);
  const Stopwatch clock;
  double worst = 0.0;
  int failures = 0;
  for (auto [m, n] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 4}}) {
    for (int t = 0; t < 100; ++t) {
      const auto psi = haar_state(m * n, rng);
      const auto sd = schmidt(psi, factorizing_tps(psi, m, n));
      const double residual = sd.coefficients.size() > 1 ? sd.coefficients(1) : 0.0;
      worst = std::max(worst, residual);
      failures += sd.rank() != 1 || residual >= 1e-8;
    }
  }
  const double s = clock.seconds();
  return {failures == 0 && s < 10.0,
          fmt("400 states, %d failures, max lambda_2 %.2e, %.3f s", failures, worst, s)};
}

Outcome structure_relativity() {
  const ModeRegister reg{{mode(0, Species::photon_h), mode(1, Species::photon_v)}};
  const auto state = make_state(reg, {{cfg({1, 0}), 1.0}, {cfg({0, 1}), 1.0}});
  const auto hv = bipartition(reg, {id(0)});
  // +-45 frame: |10> -> |+45>, |01> -> |-45>, vacuum and |11> fixed
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(4, 4);
  u(1, 1) = -h;
  u(1, 2) = h;
  u(2, 1) = h;
  u(2, 2) = h;
  const double s_hv = entanglement_entropy(state, hv);
  const double s_45 = entanglement_entropy(state, conjugated_tps(hv, u));
  return {std::abs(s_hv - 1.0) <= 1e-10 && s_45 < 1e-10,
          fmt("H/V %.12f bits, +-45 %.2e bits", s_hv, s_45)};
}

struct Pair {
  ModeRegister reg{{mode(0, Species::atom_b), mode(1, Species::molecule_ab),
                    mode(2, Species::atom_b), mode(3, Species::molecule_ab)}};
  BellLayout layout{QubitSite::dual_rail({id(0), id(1)}), QubitSite::dual_rail({id(2), id(3)})};

  PureState from_qubits(const Eigen::VectorXcd& v) const {
    return make_state(reg, {{cfg({0, 1, 0, 1}), v(0)},
                            {cfg({0, 1, 1, 0}), v(1)},
                            {cfg({1, 0, 0, 1}), v(2)},
                            {cfg({1, 0, 1, 0}), v(3)}});
  }
  PureState bell() const {
    return make_state(reg, {{cfg({0, 1, 1, 0}), 1.0}, {cfg({1, 0, 0, 1}), 1.0}});
  }
};

Outcome tsirelson() {
  const Pair p;
  const TwoSiteModel model(p.bell(), {p.layout, Capability::full, std::nullopt});
  const auto opt = optimize_chsh_angles(model);
  const double exact = chsh(model, opt.angles, EvalMode::exact).s;
  const Stopwatch clock;
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto est = chsh(model, opt.angles, EvalMode::sampled, {100000, seed, 4, false});
    within += std::abs(est.s - kTsirelson) <= 5.0 * est.standard_error;
  }
  const double s = clock.seconds();
  return {std::abs(exact - kTsirelson) <= 1e-6 && within >= 99 && s < 60.0,
          fmt("exact |S - 2sqrt2| = %.2e, %d/100 sampled within 5 sigma, %.2f s",
              std::abs(exact - kTsirelson), within, s)};
}

Outcome superselection_honesty() {
  const Pair p;
  const TwoSiteModel model(p.bell(), {p.layout, Capability::superselected, std::nullopt});
  // independent enumeration of every legal quadruple, both signs of S
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const AngleQuad q{i * kPi / 2, j * kPi / 2, k * kPi / 2, l * kPi / 2};
          worst = std::max(worst, std::abs(chsh(model, q, EvalMode::exact).s));
        }
  const auto opt = optimize_chsh_angles(model);
  return {worst <= 2.0 + 1e-9 && opt.exhaustive && opt.s <= 2.0 + 1e-9,
          fmt("max |S| over 256 legal settings %.12f", worst)};
}

Outcome reference_convergence() {
  auto c = cli::ExperimentConfig::defaults(cli::Scenario::atom);
  c.exact = true;
  const Stopwatch clock;
  const auto r = cli::run_atom_scenario(c);
  const double s = clock.seconds();
  std::ostringstream curve;
  bool monotone = true;
  for (std::size_t k = 0; k < r.sweep.size(); ++k) {
    curve << (k ? " " : "") << r.sweep[k].parameter << ":" << fmt("%.4f", r.sweep[k].value);
    if (k > 0 && r.sweep[k].value < r.sweep[k - 1].value) monotone = false;
  }
  const double s32 = r.sweep.empty() ? 0.0 : r.sweep.back().value;
  const auto& thr = r.details["violation_threshold"];
  const std::string threshold = thr.is_null() ? "none" : thr.dump();
  return {r.sweep.size() == 6 && monotone && s32 > 2.0 && s < 600.0,
          "S*(nbar) " + curve.str() + ", first violation at nbar = " + threshold +
              fmt(", %.1f s", s)};
}

Outcome fock_failure() {
  test::ReservoirBench fock;
  fock.spec = test::fock_reservoir(1);
  test::ReservoirBench coherent;
  coherent.spec = test::coherent_reservoir(1.0);
  const double angle = kPi / 4;
  const double cf = fock.coherence(angle);
  const double cc = coherent.coherence(angle);
  return {cc - cf > 0.05, fmt("coherence Fock %.4f, coherent %.4f, margin %.4f", cf, cc, cc - cf)};
}

Outcome oscillator_demo() {
  double worst = 0.0;
  double worst_normal = 0.0;
  for (double ratio : {0.1, 0.3, 0.5, 0.7}) {
    const auto e = coupled_oscillator_entropy({1.0, 1.0, ratio}, 24);
    worst = std::max(worst, std::abs(e.original_bits - test::squeezing_entropy(1.0, 1.0, ratio)));
    worst_normal = std::max(worst_normal, e.normal_mode_bits);
  }
  return {worst <= 1e-3 && worst_normal < 1e-6,
          fmt("max |S - oracle| %.2e bits, max normal-mode %.2e bits", worst, worst_normal)};
}

std::string stripped_report(const cli::RunReport& r) {
  auto j = cli::to_json(r);
  j.erase("wall_seconds");
  return j.dump() + cli::shots_csv(r.chsh->records);
}

Outcome signalling_and_determinism() {
  const Pair p;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, kPi);
  double worst = 0.0;
  for (auto ref : {std::optional<ReservoirSpec>{}, std::optional{test::coherent_reservoir(4.0)}}) {
    const auto cap = ref ? Capability::superselected : Capability::full;
    for (int t = 0; t < 1000; ++t) {
      const TwoSiteModel model(p.from_qubits(haar_state(4, rng)), {p.layout, cap, ref});
      const double a = u(rng);
      const double b1 = u(rng);
      const double b2 = u(rng);
      worst = std::max(worst, std::abs(model.joint(a, b1).marginal_1_plus() -
                                       model.joint(a, b2).marginal_1_plus()));
      worst = std::max(worst, std::abs(model.joint(b1, a).marginal_2_plus() -
                                       model.joint(b2, a).marginal_2_plus()));
    }
  }
  auto c = cli::ExperimentConfig::defaults(cli::Scenario::photon);
  c.shots = 50000;
  c.seed = 4242;
  c.out = "records";
  const auto first = stripped_report(cli::run_photon_scenario(c));
  const auto again = stripped_report(cli::run_photon_scenario(c));
  c.workers = 7;
  const auto parallel = stripped_report(cli::run_photon_scenario(c));
  const bool identical = first == again && first == parallel;
  return {worst <= 1e-10 && identical,
          fmt("max marginal shift %.2e over 2000 trials; repeated runs %s", worst,
              identical ? "byte-identical" : "DIFFER")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"beam splitter amplitudes", beam_splitter_amplitudes},
      {"photon pipeline fidelity", photon_pipeline_fidelity},
      {"factorizing structures", factorizing_structures},
      {"structure relativity", structure_relativity},
      {"Tsirelson bound", tsirelson},
      {"superselection honesty", superselection_honesty},
      {"reference-frame convergence", reference_convergence},
      {"Fock reservoir failure", fock_failure},
      {"oscillator entropy", oscillator_demo},
      {"no-signalling and determinism", signalling_and_determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %-30s %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
