// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file measurement.hpp
 * @brief Local two-outcome measurements on qubit-encoded sites.
 *
 * A site is a qubit encoded in occupation numbers: either dual-rail (one
 * particle in the `plus` or the `minus` mode, e.g. molecule vs atom) or
 * single-rail (the `plus` mode occupied or empty, e.g. excited vs ground
 * atom). Outcome +1 means `plus` (molecule / excited), -1 means `minus`.
 *
 * The measured observable at angle a is A(a) = cos(2a) Z + sin(2a) X in the
 * (plus, minus) basis, realized by the rotation [[c, s], [-s, c]]
 * (c = cos a, s = sin a) followed by an occupation readout.
 *
 * Without a reference reservoir, a superselected device can only read
 * occupations: a must be a multiple of pi/2. With a reference the rotation
 * is the association coupling to a freshly prepared reservoir trap.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "modent/bell/rng.hpp"
#include "modent/couplers/association.hpp"
#include "modent/couplers/reservoir.hpp"
#include "modent/error.hpp"
#include "modent/fock/state.hpp"

namespace modent {

enum class Capability {
  full,           ///< arbitrary local rotations (idealized device)
  superselected,  ///< number-conserving readout only, unless a reference is supplied
};

constexpr std::string_view to_string(Capability c) noexcept {
  return c == Capability::full ? "full" : "superselected";
}

enum class SiteLabel : std::uint8_t { beam_1 = 0, beam_2 = 1 };

struct QubitSite {
  ModeId plus;
  std::optional<ModeId> minus;  ///< absent for single-rail encoding

  static QubitSite single_rail(ModeId mode) { return {mode, std::nullopt}; }
  static QubitSite dual_rail(const FlyingSite& s) { return {s.molecule, s.atom}; }
};

/// Sites and the ids given to reference reservoirs when they are attached.
struct BellLayout {
  QubitSite beam_1;
  QubitSite beam_2;
  ModeId reservoir_1{ModeId{1000}};
  ModeId reservoir_2{ModeId{1001}};

  [[nodiscard]] const QubitSite& site(SiteLabel s) const noexcept {
    return s == SiteLabel::beam_1 ? beam_1 : beam_2;
  }
  [[nodiscard]] ModeId reservoir(SiteLabel s) const noexcept {
    return s == SiteLabel::beam_1 ? reservoir_1 : reservoir_2;
  }
};

inline constexpr double kAngleTolerance = 1e-12;

/// True when `angle` is a multiple of pi/2 (number-conserving readout).
inline bool is_number_conserving(double angle) {
  const double q = angle / (std::numbers::pi / 2.0);
  return std::abs(q - std::round(q)) * (std::numbers::pi / 2.0) <= kAngleTolerance;
}

struct MeasurementSetting {
  SiteLabel site{SiteLabel::beam_1};
  double angle{0.0};
  std::optional<ReservoirSpec> reference;
  Capability capability{Capability::full};

  /// Throws SuperselectionError for rotations a superselected device cannot
  /// perform without a reference frame.
  void validate() const {
    if (!std::isfinite(angle)) throw ArgumentError("measurement angle must be finite");
    if (reference) {
      reference->validate();
      if (angle < 0.0) {
        throw ArgumentError("reference rotations need a nonnegative angle (interaction time)");
      }
    }
    if (capability == Capability::superselected && !reference && !is_number_conserving(angle)) {
      throw SuperselectionError(
          "setting at angle " + std::to_string(angle) +
          " violates the particle-number superselection rule: without a reference frame only "
          "number-conserving readouts (angle = k pi/2) are allowed");
    }
  }
};

/// Qubit index of a configuration at a site: 0 = plus, 1 = minus.
inline int site_qubit(const ModeRegister& reg, BasisIndex r, const QubitSite& site) {
  const int p = reg.occupation(r, reg.position(site.plus));
  if (!site.minus) {
    if (p > 1) throw SectorError("single-rail site " + describe(site.plus) + " holds " +
                                 std::to_string(p) + " excitations");
    return p == 1 ? 0 : 1;
  }
  const int m = reg.occupation(r, reg.position(*site.minus));
  if (p + m != 1) {
    throw SectorError("dual-rail site (" + describe(site.plus) + ", " + describe(*site.minus) +
                      ") does not hold exactly one particle");
  }
  return p == 1 ? 0 : 1;
}

inline int qubit_outcome(int qubit) noexcept { return qubit == 0 ? +1 : -1; }

/// Ideal local rotation [[c, s], [-s, c]] in the (plus, minus) basis.
inline PureState rotate_site(const PureState& state, const QubitSite& site, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  if (!site.minus) {
    if (state.reg().label(site.plus).cutoff != 1) {
      throw ArgumentError("single-rail site mode must have cutoff 1");
    }
    // sub-index: occupation 0 = minus, 1 = plus
    Eigen::Matrix2cd v;
    v(1, 1) = c;   // plus -> plus
    v(0, 1) = -s;  // plus -> minus
    v(1, 0) = s;   // minus -> plus
    v(0, 0) = c;   // minus -> minus
    return apply_unitary_on_modes(state, {site.plus}, v);
  }
  // sub-index n_plus * 2 + n_minus: plus = 2, minus = 1
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = 1.0;
  u(3, 3) = 1.0;
  u(2, 2) = c;
  u(1, 2) = -s;
  u(2, 1) = s;
  u(1, 1) = c;
  return apply_unitary_on_modes(state, {site.plus, *site.minus}, u);
}

/// A(a) = cos(2a) Z + sin(2a) X in the (plus, minus) basis.
inline Eigen::Matrix2cd ideal_observable(double angle) {
  Eigen::Matrix2cd m;
  const double c2 = std::cos(2.0 * angle);
  const double s2 = std::sin(2.0 * angle);
  m << c2, s2, s2, -c2;
  return m;
}

/// Effective single-site observable (Heisenberg picture, reservoir traced
/// out) of a setting: Pi(+1) - Pi(-1) as a 2x2 matrix in (plus, minus).
inline Eigen::Matrix2cd effective_observable(const MeasurementSetting& setting) {
  setting.validate();
  if (!setting.reference) {
    if (setting.capability == Capability::full) return ideal_observable(setting.angle);
    const double sign = std::cos(2.0 * setting.angle) > 0.0 ? 1.0 : -1.0;
    return ideal_observable(0.0) * sign;
  }
  const ReservoirSpec& spec = *setting.reference;
  const auto res = spec.amplitudes();
  const int cutoff = spec.cutoff;
  // phi[x][q][n]: output amplitude of (qubit q, reservoir n) for input x.
  std::array<std::array<std::vector<double>, 2>, 2> phi;
  for (auto& x : phi)
    for (auto& q : x) q.assign(static_cast<std::size_t>(cutoff) + 1, 0.0);
  for (int n = 0; n <= cutoff; ++n) {
    const double a = res[static_cast<std::size_t>(n)];
    const auto un = static_cast<std::size_t>(n);
    // input plus (molecule): pairs with (minus, n + 1)
    if (n + 1 > cutoff) {
      phi[0][0][un] += a;
    } else {
      const double t = spec.pair_angle(setting.angle, n + 1);
      phi[0][0][un] += a * std::cos(t);
      phi[0][1][un + 1] -= a * std::sin(t);
    }
    // input minus (atom only): pairs with (plus, n - 1)
    if (n == 0) {
      phi[1][1][un] += a;
    } else {
      const double t = spec.pair_angle(setting.angle, n);
      phi[1][1][un] += a * std::cos(t);
      phi[1][0][un - 1] += a * std::sin(t);
    }
  }
  Eigen::Matrix2cd m;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      double s = 0.0;
      for (std::size_t n = 0; n <= static_cast<std::size_t>(cutoff); ++n) {
        s += phi[x][0][n] * phi[y][0][n] - phi[x][1][n] * phi[y][1][n];
      }
      m(x, y) = s;
    }
  }
  return m;
}

struct SiteMeasurement {
  int outcome{0};  ///< +1 (plus / molecule) or -1 (minus / atom)
  double probability{0.0};
  PureState collapsed;
};

/// Born-rule measurement of one site. With a reference, a reservoir trap is
/// appended to the register (id from the layout), coupled to the site and
/// left in the collapsed state.
template <typename Rng>
SiteMeasurement measure_site(const PureState& state, const BellLayout& layout,
                             const MeasurementSetting& setting, Rng& rng) {
  static_assert(sizeof(typename Rng::result_type) == 8, "measure_site needs a 64-bit generator");
  setting.validate();
  const QubitSite& site = layout.site(setting.site);
  PureState rotated = state;
  int sign = 1;
  if (setting.reference) {
    if (!site.minus) throw ArgumentError("reference rotations need a dual-rail site");
    const ModeId trap = layout.reservoir(setting.site);
    if (state.reg().find(trap)) throw ArgumentError(describe(trap) + " already in the register");
    rotated = prepare_reservoir(state, trap, *setting.reference);
    rotated = association_rotation(rotated, {*site.minus, site.plus}, trap, *setting.reference,
                                   setting.angle);
  } else if (setting.capability == Capability::full) {
    rotated = rotate_site(state, site, setting.angle);
  } else if (std::cos(2.0 * setting.angle) < 0.0) {
    sign = -1;
  }
  const auto& reg = rotated.reg();
  double p_plus = 0.0;
  for (const auto& [r, a] : rotated.amplitudes()) {
    if (site_qubit(reg, r, site) == 0) p_plus += std::norm(a);
  }
  p_plus /= rotated.norm_squared();
  const double u = to_unit_interval(rng());
  const int qubit = u < p_plus ? 0 : 1;
  PureState::AmplitudeMap kept;
  for (const auto& [r, a] : rotated.amplitudes()) {
    if (site_qubit(reg, r, site) == qubit) kept.emplace(r, a);
  }
  const double p = qubit == 0 ? p_plus : 1.0 - p_plus;
  return {sign * qubit_outcome(qubit), p, PureState(reg, std::move(kept)).normalized()};
}

/// Reduced density matrix of the two sites, basis (q1, q2) -> 2 * q1 + q2
/// with q = 0 for plus and 1 for minus.
inline Eigen::Matrix4cd site_pair_density(const PureState& state, const BellLayout& layout) {
  const auto& reg = state.reg();
  std::vector<ModeId> site_modes{layout.beam_1.plus, layout.beam_2.plus};
  if (layout.beam_1.minus) site_modes.push_back(*layout.beam_1.minus);
  if (layout.beam_2.minus) site_modes.push_back(*layout.beam_2.minus);
  const SubIndexer sites(reg, site_modes);
  std::map<BasisIndex, std::vector<std::pair<int, Amplitude>>> by_env;
  for (const auto& [r, a] : state.amplitudes()) {
    const int q = 2 * site_qubit(reg, r, layout.beam_1) + site_qubit(reg, r, layout.beam_2);
    by_env[sites.clear(r)].emplace_back(q, a);
  }
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (const auto& [env, col] : by_env) {
    for (const auto& [i, ai] : col)
      for (const auto& [j, aj] : col) rho(i, j) += ai * std::conj(aj);
  }
  return rho / rho.trace().real();
}

}  // namespace modent
