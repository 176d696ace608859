// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "modent/error.hpp"
#include "modent/fock/state.hpp"

namespace modent {

/// The two modes at one flying position: the atom-B beam and the molecule
/// formed from it. The site qubit is {|B> (atom only), |BA> (molecule)}.
struct FlyingSite {
  ModeId atom;
  ModeId molecule;
};

struct FeshbachResult {
  PureState state;
  /// Weight of configurations with an A atom but no B partner; these pass
  /// through unchanged.
  double unpaired_weight{0.0};

  [[nodiscard]] bool incomplete() const noexcept { return unpaired_weight > kPruneThreshold; }
};

/// Coherent association A + B -> AB (a pi pulse on the association
/// transition): |A, B, 0> <-> |0, 0, AB>, everything else unchanged.
inline FeshbachResult feshbach_associate(const PureState& state, ModeId trap_mode,
                                         ModeId beam_mode, ModeId molecule_mode) {
  const auto& reg = state.reg();
  if (reg.label(trap_mode).species != Species::atom_a ||
      reg.label(beam_mode).species != Species::atom_b ||
      reg.label(molecule_mode).species != Species::molecule_ab) {
    throw ArgumentError("feshbach_associate: expected (atom-A trap, atom-B beam, molecule-AB) modes");
  }
  const auto pt = reg.position(trap_mode);
  const auto pb = reg.position(beam_mode);
  const auto pm = reg.position(molecule_mode);
  double unpaired = 0.0;
  PureState out = apply_basis_map(state, [&](BasisIndex r, auto&& emit) {
    const int a = reg.occupation(r, pt);
    const int b = reg.occupation(r, pb);
    const int mol = reg.occupation(r, pm);
    if (a > 1) throw SectorError("feshbach_associate: more than one A atom in " + describe(trap_mode));
    if (b > 1) throw SectorError("feshbach_associate: more than one B atom in " + describe(beam_mode));
    if (a == 1 && b == 1) {
      if (mol != 0) {
        throw SectorError("feshbach_associate: " + describe(molecule_mode) +
                          " already occupied where association fires");
      }
      BasisIndex t = reg.with_occupation(r, pt, 0);
      t = reg.with_occupation(t, pb, 0);
      emit(reg.with_occupation(t, pm, 1), 1.0);
      return;
    }
    if (a == 0 && b == 0 && mol == 1) {
      BasisIndex t = reg.with_occupation(r, pt, 1);
      t = reg.with_occupation(t, pb, 1);
      emit(reg.with_occupation(t, pm, 0), 1.0);
      return;
    }
    emit(r, 1.0);
  });
  for (const auto& [r, amp] : state.amplitudes()) {
    if (reg.occupation(r, pt) == 1 && reg.occupation(r, pb) == 0) unpaired += std::norm(amp);
  }
  return {std::move(out), unpaired};
}

/// Relative phase e^{i phi} on configurations holding a molecule at `site`
/// (DC Stark shift difference between atom and molecule). phi in [0, 2 pi).
inline PureState stark_phase(const PureState& state, const FlyingSite& site, double phi) {
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
    throw ArgumentError("stark_phase: phase must lie in [0, 2 pi), got " + std::to_string(phi));
  }
  const auto& reg = state.reg();
  (void)reg.position(site.atom);  // must belong to the register
  const auto pm = reg.position(site.molecule);
  const Amplitude phase = std::polar(1.0, phi);
  return apply_basis_map(state, [&](BasisIndex r, auto&& emit) {
    const int mol = reg.occupation(r, pm);
    emit(r, mol == 0 ? Amplitude{1.0} : std::pow(phase, mol));
  });
}

}  // namespace modent
