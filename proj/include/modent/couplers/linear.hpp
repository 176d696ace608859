// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file linear.hpp
 * @brief Single-excitation mode converters: beam splitter, polarizing beam
 *        splitter and the pi-pulse photon -> atom transfer.
 */

#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "modent/error.hpp"
#include "modent/fock/state.hpp"

namespace modent {

namespace detail {

inline void require_cutoff(const ModeLabel& m, int cutoff, const char* who) {
  if (m.cutoff != cutoff) {
    throw ArgumentError(std::string(who) + ": " + describe(m.id) + " must have cutoff " +
                        std::to_string(cutoff) + ", has " + std::to_string(m.cutoff));
  }
}

}  // namespace detail

/// Mixes one excitation between two paths with the real rotation
/// [[cos t, -sin t], [sin t, cos t]] on (|10>, |01>). t = pi/4 is 50/50.
inline PureState beam_splitter(const PureState& state, ModeId path_a, ModeId path_b,
                               double theta) {
  const auto& reg = state.reg();
  const auto& ma = reg.label(path_a);
  const auto& mb = reg.label(path_b);
  if (ma.species != mb.species) {
    throw ArgumentError("beam_splitter: modes must have the same species");
  }
  detail::require_cutoff(ma, 1, "beam_splitter");
  detail::require_cutoff(mb, 1, "beam_splitter");
  const auto pa = reg.position(path_a);
  const auto pb = reg.position(path_b);
  for (const auto& [r, amp] : state.amplitudes()) {
    if (reg.occupation(r, pa) + reg.occupation(r, pb) > 1) {
      throw SectorError("beam_splitter: double occupation across " + describe(path_a) + " and " +
                        describe(path_b) + " is outside the single-particle model");
    }
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // sub-index n_a * 2 + n_b: |00>, |01>, |10>, |11>
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = 1.0;
  u(2, 2) = c;
  u(1, 2) = s;
  u(2, 1) = -s;
  u(1, 1) = c;
  u(3, 3) = 1.0;
  return apply_unitary_on_modes(state, {path_a, path_b}, u);
}

/// Routes the H excitation into `out_h` and the V excitation into `out_v`.
inline PureState pbs_split(const PureState& state, ModeId pol_h, ModeId pol_v, ModeId out_h,
                           ModeId out_v) {
  const auto& reg = state.reg();
  detail::require_cutoff(reg.label(pol_h), 1, "pbs_split");
  detail::require_cutoff(reg.label(pol_v), 1, "pbs_split");
  const auto ph = reg.position(pol_h);
  const auto pv = reg.position(pol_v);
  const auto oh = reg.position(out_h);
  const auto ov = reg.position(out_v);
  return apply_basis_map(state, [&](BasisIndex r, auto&& emit) {
    if (reg.occupation(r, oh) != 0 || reg.occupation(r, ov) != 0) {
      throw SectorError("pbs_split: output paths must be empty");
    }
    BasisIndex out = reg.with_occupation(r, oh, reg.occupation(r, ph));
    out = reg.with_occupation(out, ov, reg.occupation(r, pv));
    out = reg.with_occupation(out, ph, 0);
    out = reg.with_occupation(out, pv, 0);
    emit(out, 1.0);
  });
}

/// Resonant pi pulse: swaps |1, g> and |0, e> of a photon mode and a
/// two-level atom (phase convention +1 on both transitions).
inline PureState pi_pulse_transfer(const PureState& state, ModeId photon_mode, ModeId atom_mode) {
  const auto& reg = state.reg();
  detail::require_cutoff(reg.label(atom_mode), 1, "pi_pulse_transfer");
  const auto pp = reg.position(photon_mode);
  const auto pa = reg.position(atom_mode);
  return apply_basis_map(state, [&](BasisIndex r, auto&& emit) {
    const int photons = reg.occupation(r, pp);
    const int excited = reg.occupation(r, pa);
    if (photons > 1) {
      throw SectorError("pi_pulse_transfer: " + std::to_string(photons) + " photons in " +
                        describe(photon_mode) + " (single-excitation model)");
    }
    if (photons == 1 && excited == 1) {
      throw SectorError("pi_pulse_transfer: atom " + describe(atom_mode) +
                        " already excited while a photon arrives");
    }
    if (photons == 0 && excited == 0) {
      emit(r, 1.0);
      return;
    }
    const BasisIndex swapped =
        reg.with_occupation(reg.with_occupation(r, pp, 1 - photons), pa, 1 - excited);
    emit(swapped, 1.0);
  });
}

}  // namespace modent
