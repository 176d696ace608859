// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file scenarios.hpp
 * @brief End-to-end pipelines behind the command-line subcommands.
 *
 * photon: |10> -> beam splitter -> pi pulse per arm -> CHSH on the atoms.
 * atom:   one A atom shared by two traps -> association with the passing B
 *         atoms -> Stark phase -> CHSH on {atom, molecule} per beam, read
 *         through reservoir traps when the device is superselected.
 * tps-demo, oscillator-demo: entanglement is relative to the chosen split.
 */

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "modent/bell/chsh.hpp"
#include "modent/bell/optimize.hpp"
#include "modent/cli/config.hpp"
#include "modent/cli/report.hpp"
#include "modent/couplers/coupler.hpp"
#include "modent/fock/density.hpp"
#include "modent/tps/factorize.hpp"
#include "modent/tps/oscillator.hpp"
#include "modent/tps/random.hpp"
#include "modent/tps/schmidt.hpp"

namespace modent::cli {

namespace detail {

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline ModeLabel label(int id, Species s, int cutoff = 1) {
  return {ModeId{static_cast<std::uint16_t>(id)}, s, cutoff};
}

inline ModeId mid(int id) { return ModeId{static_cast<std::uint16_t>(id)}; }

inline SamplingOptions sampling(const ExperimentConfig& c) {
  return {c.shots, c.seed, c.workers, !c.out.empty()};
}

/// Optimized or configured angles, then the estimate in the configured mode.
inline ChshEstimate run_chsh(const TwoSiteModel& model, const ExperimentConfig& c,
                             nlohmann::ordered_json& details) {
  AngleQuad q = c.angles.quadruple;
  if (c.angles.optimized) {
    const auto opt = optimize_chsh_angles(model);
    q = opt.angles;
    details["optimized_s"] = opt.s;
    details["exhaustive_scan"] = opt.exhaustive;
  }
  return chsh(model, q, c.exact ? EvalMode::exact : EvalMode::sampled, sampling(c));
}

}  // namespace detail

inline RunReport run_photon_scenario(const ExperimentConfig& c) {
  using detail::mid;
  c.validate();
  const detail::Stopwatch clock;
  // paths P1, P2; two-level atoms E1, E2 (occupation 1 = excited)
  const ModeRegister reg({detail::label(0, Species::spatial_path), detail::label(1, Species::spatial_path),
                          detail::label(2, Species::atom_a), detail::label(3, Species::atom_a)});
  const auto arms = bipartition(reg, {mid(0), mid(2)});
  RunReport r;
  r.scenario = std::string(to_string(c.scenario));
  r.config_hash = config_hash(c);
  r.sampled = !c.exact;

  const PureState input = basis_state(reg, {{1, 0, 0, 0}});
  const PureState split = beam_splitter(input, mid(0), mid(1), c.beam_splitter_theta);
  const PureState atoms = pi_pulse_transfer(pi_pulse_transfer(split, mid(0), mid(2)), mid(1), mid(3));
  const std::string cut = "{P1,E1}|{P2,E2}";
  r.stages = {{"photon in path 1", cut, entanglement_entropy(input, arms)},
              {"after beam splitter", cut, entanglement_entropy(split, arms)},
              {"after pi pulses", cut, entanglement_entropy(atoms, arms)}};

  const double cth = std::cos(c.beam_splitter_theta);
  const double sth = std::sin(c.beam_splitter_theta);
  PureState::AmplitudeMap expected;
  if (std::abs(cth) > kPruneThreshold) expected[reg.rank({{0, 0, 1, 0}})] = cth;
  if (std::abs(sth) > kPruneThreshold) expected[reg.rank({{0, 0, 0, 1}})] = sth;
  const PureState target(reg, std::move(expected));
  r.details["atom_state_fidelity"] = fidelity(atoms, target);
  r.details["photon_vacuum_weight"] = partial_trace(atoms, {mid(0), mid(1)}).matrix()(0, 0).real();

  const ChshSetup setup{{QubitSite::single_rail(mid(2)), QubitSite::single_rail(mid(3))},
                        c.capability,
                        std::nullopt};
  r.chsh = detail::run_chsh(TwoSiteModel(atoms, setup), c, r.details);
  r.wall_seconds = clock.seconds();
  return r;
}

/// Modes of the two-trap experiment: traps T1, T2 (A atoms), beams B1, B2,
/// molecules M1, M2; reservoir traps are appended as ids 6 and 7.
struct AtomLayout {
  ModeRegister reg{{detail::label(0, Species::atom_a), detail::label(1, Species::atom_a),
                    detail::label(2, Species::atom_b), detail::label(3, Species::atom_b),
                    detail::label(4, Species::molecule_ab), detail::label(5, Species::molecule_ab)}};
  FlyingSite site_1{detail::mid(2), detail::mid(4)};
  FlyingSite site_2{detail::mid(3), detail::mid(5)};
  BellLayout bell{QubitSite::dual_rail(site_1), QubitSite::dual_rail(site_2), detail::mid(6),
                  detail::mid(7)};

  /// The A atom in either trap, one B atom in each beam.
  [[nodiscard]] PureState shared_atom() const {
    return make_state(reg, {{{{1, 0, 1, 1, 0, 0}}, 1.0}, {{{0, 1, 1, 1, 0, 0}}, 1.0}});
  }
};

/// Maximal exact-mode S with reservoir traps of mean occupation `nbar`.
inline double reference_chsh_maximum(const PureState& flying, const AtomLayout& layout,
                                     const ReservoirSpec& spec) {
  const ChshSetup setup{layout.bell, Capability::superselected, spec};
  return optimize_chsh_angles(TwoSiteModel(flying, setup)).s;
}

inline RunReport run_atom_scenario(const ExperimentConfig& c) {
  using detail::mid;
  c.validate();
  const detail::Stopwatch clock;
  const AtomLayout layout;
  const auto& reg = layout.reg;
  const auto arms = bipartition(reg, {mid(0), mid(2), mid(4)});
  RunReport r;
  r.scenario = std::string(to_string(c.scenario));
  r.config_hash = config_hash(c);
  r.sampled = !c.exact;

  const PureState shared = layout.shared_atom();
  PureState associated =
      apply_coupler(shared, {CouplerKind::feshbach_associate, {mid(0), mid(2), mid(4)}});
  associated = apply_coupler(associated, {CouplerKind::feshbach_associate, {mid(1), mid(3), mid(5)}});
  const PureState phased =
      apply_coupler(associated, {CouplerKind::stark_phase, {mid(2), mid(4)}, 0.0, c.stark_phase});
  const std::string cut = "{T1,B1,M1}|{T2,B2,M2}";
  r.stages = {{"A atom shared by the traps", cut, entanglement_entropy(shared, arms)},
              {"after association", cut, entanglement_entropy(associated, arms)},
              {"after Stark phase", cut, entanglement_entropy(phased, arms)}};

  const double trap_purity = partial_trace(associated, {mid(0), mid(1)}).purity();
  if (std::abs(trap_purity - 1.0) > 1e-10) {
    throw InvariantError("traps did not factor out after association (purity " + sci(trap_purity) + ")");
  }
  r.details["trap_purity"] = trap_purity;
  r.details["beam_1_vs_rest_bits"] =
      entanglement_entropy(phased, bipartition(reg, {mid(0), mid(1), mid(2), mid(4)}));

  std::optional<ReservoirSpec> reference;
  if (c.reference) {
    reference = c.reservoir.spec(c.reservoir.mean_occupation);
    r.details["reservoir"] = {{"mean_occupation", reference->mean_occupation},
                              {"cutoff", reference->cutoff},
                              {"kind", detail::kind_name(reference->kind)},
                              {"captured_norm", reference->captured_norm()}};
  }
  const ChshSetup setup{layout.bell, c.capability, reference};
  r.chsh = detail::run_chsh(TwoSiteModel(phased, setup), c, r.details);

  if (c.reference && !c.reservoir.sweep.empty()) {
    r.sweep_parameter = "mean_occupation";
    std::optional<double> threshold;
    bool monotone = true;
    for (double nbar : c.reservoir.sweep) {
      const double s = reference_chsh_maximum(phased, layout, c.reservoir.spec(nbar));
      if (!r.sweep.empty() && s < r.sweep.back().value - 1e-9) monotone = false;
      if (!threshold && s > 2.0) threshold = nbar;
      r.sweep.push_back({nbar, s});
    }
    r.details["sweep_nondecreasing"] = monotone;
    r.details["violation_threshold"] =
        threshold ? nlohmann::ordered_json(*threshold) : nlohmann::ordered_json(nullptr);
  }
  r.wall_seconds = clock.seconds();
  return r;
}

inline RunReport run_tps_demo(const ExperimentConfig& c) {
  using detail::mid;
  c.validate();
  const detail::Stopwatch clock;
  RunReport r;
  r.scenario = std::string(to_string(c.scenario));
  r.config_hash = config_hash(c);

  // 45-degree photon in H/V modes vs the +-45 degree mode frame.
  const ModeRegister pol({detail::label(0, Species::photon_h), detail::label(1, Species::photon_v)});
  const PureState diag = make_state(pol, {{{{1, 0}}, 1.0}, {{{0, 1}}, 1.0}});
  const auto hv = bipartition(pol, {mid(0)});
  Eigen::MatrixXcd rot = Eigen::MatrixXcd::Identity(4, 4);
  const double h = 1.0 / std::numbers::sqrt2;
  rot(2, 2) = h;   // |10> -> |+45>
  rot(1, 2) = h;
  rot(2, 1) = h;   // |01> -> |-45>
  rot(1, 1) = -h;
  r.stages.push_back({"45-degree photon", "H|V", entanglement_entropy(diag, hv)});
  r.stages.push_back({"45-degree photon", "+45|-45", entanglement_entropy(diag, conjugated_tps(hv, rot))});

  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
  bell(0) = bell(3) = h;
  r.stages.push_back({"Bell state d=4", "canonical 2x2",
                      entanglement_entropy(schmidt(bell, TensorProductStructure::canonical(2, 2)))});
  r.stages.push_back({"Bell state d=4", "factorizing 2x2",
                      entanglement_entropy(schmidt(bell, factorizing_tps(bell, 2, 2)))});

  const auto d = static_cast<Eigen::Index>(c.tps.dimension);
  const auto m = static_cast<std::size_t>(std::max(c.tps.left, 0));
  const auto n = static_cast<std::size_t>(std::max(c.tps.right, 0));
  Eigen::VectorXcd probe = Eigen::VectorXcd::Zero(d);
  probe(0) = 1.0;
  try {
    (void)factorizing_tps(probe, m, n);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("tps: ") + e.what());
  }
  std::mt19937_64 rng(c.seed);
  int factorized = 0;
  double worst = 0.0;
  double mean_canonical = 0.0;
  for (int k = 0; k < c.tps.random_states; ++k) {
    const Eigen::VectorXcd psi = haar_state(d, rng);
    const auto sd = schmidt(psi, factorizing_tps(psi, m, n));
    if (sd.rank() == 1) ++factorized;
    if (sd.coefficients.size() > 1) worst = std::max(worst, sd.coefficients(1));
    mean_canonical += entanglement_entropy(schmidt(psi, TensorProductStructure::canonical(m, n)));
  }
  r.details["random_states"] = c.tps.random_states;
  r.details["factorized"] = factorized;
  r.details["largest_residual_coefficient"] = worst;
  r.details["mean_canonical_entropy_bits"] =
      c.tps.random_states > 0 ? mean_canonical / c.tps.random_states : 0.0;
  r.wall_seconds = clock.seconds();
  return r;
}

inline RunReport run_oscillator_demo(const ExperimentConfig& c) {
  c.validate();
  const detail::Stopwatch clock;
  const auto& o = c.oscillator;
  const auto pair_for = [&](double ratio) {
    return OscillatorPair{o.mass, o.omega, ratio * o.mass * o.omega * o.omega};
  };
  RunReport r;
  r.scenario = std::string(to_string(c.scenario));
  r.config_hash = config_hash(c);

  const OscillatorPair pair = pair_for(o.coupling_ratio);
  const auto e = coupled_oscillator_entropy(pair, o.cutoff);
  r.stages = {{"ground state", "oscillator 1|oscillator 2", e.original_bits},
              {"ground state", "normal mode +|normal mode -", e.normal_mode_bits}};
  const double analytic = gaussian_ground_state_entropy(pair);
  r.details["coupling_ratio"] = o.coupling_ratio;
  r.details["analytic_bits"] = analytic;
  r.details["abs_error_bits"] = std::abs(e.original_bits - analytic);
  r.details["lower_cutoff_bits"] = e.lower_cutoff_bits;
  r.details["converged"] = e.converged;
  r.details["truncation_weight"] = e.truncation_weight;

  r.sweep_parameter = "coupling_ratio";
  for (double ratio : o.sweep) {
    r.sweep.push_back({ratio, coupled_oscillator_entropy(pair_for(ratio), o.cutoff).original_bits});
  }
  auto sorted = r.sweep;
  std::sort(sorted.begin(), sorted.end(), [](const SweepPoint& a, const SweepPoint& b) {
    return std::abs(a.parameter) < std::abs(b.parameter);
  });
  bool monotone = true;
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (std::abs(sorted[k].parameter) > std::abs(sorted[k - 1].parameter) &&
        sorted[k].value <= sorted[k - 1].value) {
      monotone = false;
    }
  }
  r.details["sweep_increasing_in_abs_coupling"] = monotone;
  r.wall_seconds = clock.seconds();
  return r;
}

inline RunReport run_scenario(const ExperimentConfig& c) {
  switch (c.scenario) {
    case Scenario::photon: return run_photon_scenario(c);
    case Scenario::atom: return run_atom_scenario(c);
    case Scenario::tps_demo: return run_tps_demo(c);
    case Scenario::oscillator_demo: return run_oscillator_demo(c);
  }
  throw InvariantError("unknown scenario");
}

}  // namespace modent::cli
