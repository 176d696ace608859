// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file reservoir.hpp
 * @brief Number-nonconserving local rotations borrowed from an A-atom
 *        reservoir trap.
 *
 * A flying site {|B>, |BA>} exchanges one A atom with a reservoir trap
 * through the association resonance. On each pair
 *
 *     |B, n>  <->  |BA, n-1>        (n A atoms in the reservoir)
 *
 * the dynamics is a two-level Rabi rotation with frequency proportional to
 * sqrt(n). The interaction time is tuned so that a reservoir holding exactly
 * the mean occupation nbar is rotated by the requested angle; pair n is then
 * rotated by angle * sqrt(n / nbar). In the (|BA>, |B>) basis the rotation
 * by `angle` is [[cos, sin], [-sin, cos]], so a quarter period (angle pi/4)
 * sends |B> -> (|BA> + |B>)/sqrt2 and |BA> -> (|BA> - |B>)/sqrt2.
 *
 * A coherent reservoir barely notices one atom more or less, so the flying
 * site keeps its coherence; a Fock reservoir records which branch took an
 * atom and the site decoheres.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "modent/couplers/association.hpp"
#include "modent/error.hpp"
#include "modent/fock/state.hpp"

namespace modent {

enum class ReservoirKind { fock, coherent };

/// How the association Rabi frequency depends on the reservoir occupation.
enum class RabiScaling {
  sqrt_occupation,  ///< Omega_n ~ sqrt(n) (default)
  constant,         ///< Omega_n independent of n >= 1 (comparison model)
};

inline constexpr double kReservoirNormCapture = 1e-8;

struct ReservoirSpec {
  double mean_occupation{0.0};
  int cutoff{64};
  ReservoirKind kind{ReservoirKind::coherent};
  RabiScaling scaling{RabiScaling::sqrt_occupation};

  /// Smallest cutoff accepted for a coherent reservoir.
  [[nodiscard]] static int minimum_cutoff(double nbar) {
    return static_cast<int>(std::ceil(nbar + 8.0 * std::sqrt(nbar)));
  }

  /// Occupation the interaction time is tuned for (>= 1).
  [[nodiscard]] double reference_occupation() const noexcept {
    return std::max(mean_occupation, 1.0);
  }

  /// Poisson weight kept by the truncation at `cutoff`.
  [[nodiscard]] double captured_norm() const {
    if (kind == ReservoirKind::fock) return 1.0;
    double s = 0.0;
    for (int n = 0; n <= cutoff; ++n) s += std::exp(log_poisson(n));
    return s;
  }

  void validate() const {
    if (!std::isfinite(mean_occupation) || mean_occupation < 0.0) {
      throw SectorError("reservoir mean occupation must be finite and >= 0");
    }
    if (cutoff < 1) throw SectorError("reservoir cutoff must be >= 1");
    if (kind == ReservoirKind::fock) {
      if (mean_occupation != std::round(mean_occupation)) {
        throw SectorError("Fock reservoir needs an integer occupation, got " +
                          std::to_string(mean_occupation));
      }
      if (mean_occupation > cutoff) {
        throw SectorError("Fock reservoir occupation exceeds the cutoff " + std::to_string(cutoff));
      }
      return;
    }
    if (cutoff < minimum_cutoff(mean_occupation)) {
      throw SectorError("reservoir cutoff " + std::to_string(cutoff) + " too small for nbar = " +
                        std::to_string(mean_occupation) + " (need >= " +
                        std::to_string(minimum_cutoff(mean_occupation)) + ")");
    }
    if (captured_norm() < 1.0 - kReservoirNormCapture) {
      throw SectorError("reservoir cutoff " + std::to_string(cutoff) +
                        " loses more than 1e-8 of the coherent-state norm");
    }
  }

  /// Reservoir amplitudes over n = 0..cutoff (real, normalized after
  /// truncation; coherent amplitude alpha = sqrt(nbar) taken real).
  [[nodiscard]] std::vector<double> amplitudes() const {
    validate();
    std::vector<double> a(static_cast<std::size_t>(cutoff) + 1, 0.0);
    if (kind == ReservoirKind::fock) {
      a[static_cast<std::size_t>(mean_occupation)] = 1.0;
      return a;
    }
    double norm = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
      a[static_cast<std::size_t>(n)] = std::exp(0.5 * log_poisson(n));
      norm += a[static_cast<std::size_t>(n)] * a[static_cast<std::size_t>(n)];
    }
    for (auto& x : a) x /= std::sqrt(norm);
    return a;
  }

  /// Rotation angle applied to the pair (|B, n>, |BA, n-1>), n >= 1.
  [[nodiscard]] double pair_angle(double angle, int n) const {
    if (n <= 0) return 0.0;
    if (scaling == RabiScaling::constant) return angle;
    return angle * std::sqrt(static_cast<double>(n) / reference_occupation());
  }

 private:
  [[nodiscard]] double log_poisson(int n) const {
    if (mean_occupation == 0.0) return n == 0 ? 0.0 : -INFINITY;
    return -mean_occupation + n * std::log(mean_occupation) - std::lgamma(n + 1.0);
  }
};

/// Appends a reservoir trap mode prepared according to `spec`.
inline PureState prepare_reservoir(const PureState& state, ModeId trap, const ReservoirSpec& spec) {
  const auto amps = spec.amplitudes();
  std::vector<Amplitude> local(amps.begin(), amps.end());
  return tensor_append(state, ModeLabel{trap, Species::reservoir_trap, spec.cutoff}, local);
}

/// Association-driven rotation of the flying site by `angle`, exchanging
/// one A atom with the reservoir trap `reservoir`. Pairs that would push the
/// reservoir above its cutoff are left untouched (truncation).
inline PureState association_rotation(const PureState& state, const FlyingSite& site,
                                      ModeId reservoir, const ReservoirSpec& spec, double angle) {
  spec.validate();
  const auto& reg = state.reg();
  const auto& res_label = reg.label(reservoir);
  if (res_label.species != Species::reservoir_trap) {
    throw ArgumentError("association_rotation: " + describe(reservoir) + " is not a reservoir trap");
  }
  const auto pa = reg.position(site.atom);
  const auto pm = reg.position(site.molecule);
  const auto pr = reg.position(reservoir);
  if (res_label.cutoff != spec.cutoff) {
    throw ArgumentError("association_rotation: reservoir mode cutoff does not match its spec");
  }
  const int cutoff = res_label.cutoff;
  return apply_basis_map(state, [&](BasisIndex r, auto&& emit) {
    const int b = reg.occupation(r, pa);
    const int mol = reg.occupation(r, pm);
    const int n = reg.occupation(r, pr);
    if (b + mol > 1) {
      throw SectorError("association_rotation: flying site holds more than one particle");
    }
    if (b == 1) {  // |B, n> -> cos |B, n> + sin |BA, n-1>
      if (n == 0) {
        emit(r, 1.0);
        return;
      }
      const double t = spec.pair_angle(angle, n);
      emit(r, std::cos(t));
      BasisIndex partner = reg.with_occupation(r, pa, 0);
      partner = reg.with_occupation(partner, pm, 1);
      emit(reg.with_occupation(partner, pr, n - 1), std::sin(t));
      return;
    }
    if (mol == 1) {  // |BA, n> -> cos |BA, n> - sin |B, n+1>
      if (n + 1 > cutoff) {
        emit(r, 1.0);
        return;
      }
      const double t = spec.pair_angle(angle, n + 1);
      emit(r, std::cos(t));
      BasisIndex partner = reg.with_occupation(r, pm, 0);
      partner = reg.with_occupation(partner, pa, 1);
      emit(reg.with_occupation(partner, pr, n + 1), -std::sin(t));
      return;
    }
    emit(r, 1.0);
  });
}

/// Quarter Rabi period of the association cycle.
inline PureState quarter_rotation(const PureState& state, const FlyingSite& site, ModeId reservoir,
                                  const ReservoirSpec& spec) {
  return association_rotation(state, site, reservoir, spec, std::numbers::pi / 4.0);
}

}  // namespace modent
