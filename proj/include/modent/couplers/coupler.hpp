// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modent/couplers/association.hpp"
#include "modent/couplers/linear.hpp"
#include "modent/couplers/reservoir.hpp"
#include "modent/error.hpp"

namespace modent {

enum class CouplerKind {
  beam_splitter,
  pbs,
  pi_pulse,
  feshbach_associate,
  stark_phase,
  quarter_rotation,
};

constexpr std::string_view to_string(CouplerKind k) noexcept {
  switch (k) {
    case CouplerKind::beam_splitter: return "beam-splitter";
    case CouplerKind::pbs: return "pbs";
    case CouplerKind::pi_pulse: return "pi-pulse";
    case CouplerKind::feshbach_associate: return "feshbach-associate";
    case CouplerKind::stark_phase: return "stark-phase";
    case CouplerKind::quarter_rotation: return "quarter-rotation";
  }
  return "unknown";
}

/// A coupler and the modes it acts on.
///
/// Target layout per kind:
///   beam-splitter      {path_a, path_b}                 uses theta
///   pbs                {pol_h, pol_v, out_h, out_v}
///   pi-pulse           {photon, atom}
///   feshbach-associate {trap, beam, molecule}
///   stark-phase        {atom, molecule}                 uses phi
///   quarter-rotation   {atom, molecule, reservoir}      uses reservoir
struct CouplerSpec {
  CouplerKind kind{CouplerKind::beam_splitter};
  std::vector<ModeId> targets;
  double theta{0.0};
  double phi{0.0};
  std::optional<ReservoirSpec> reservoir;

  [[nodiscard]] std::size_t arity() const noexcept {
    switch (kind) {
      case CouplerKind::beam_splitter:
      case CouplerKind::pi_pulse:
      case CouplerKind::stark_phase: return 2;
      case CouplerKind::feshbach_associate:
      case CouplerKind::quarter_rotation: return 3;
      case CouplerKind::pbs: return 4;
    }
    return 0;
  }

  void validate() const {
    if (targets.size() != arity()) {
      throw ArgumentError(std::string(to_string(kind)) + " takes " + std::to_string(arity()) +
                          " target modes, got " + std::to_string(targets.size()));
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (!(theta >= 0.0 && theta < two_pi) || !(phi >= 0.0 && phi < two_pi)) {
      throw ArgumentError("coupler angles must lie in [0, 2 pi)");
    }
    if (kind == CouplerKind::quarter_rotation && !reservoir) {
      throw ArgumentError("quarter-rotation needs a reservoir spec");
    }
  }
};

inline PureState apply_coupler(const PureState& state, const CouplerSpec& spec) {
  spec.validate();
  const auto& t = spec.targets;
  switch (spec.kind) {
    case CouplerKind::beam_splitter: return beam_splitter(state, t[0], t[1], spec.theta);
    case CouplerKind::pbs: return pbs_split(state, t[0], t[1], t[2], t[3]);
    case CouplerKind::pi_pulse: return pi_pulse_transfer(state, t[0], t[1]);
    case CouplerKind::feshbach_associate: {
      auto res = feshbach_associate(state, t[0], t[1], t[2]);
      if (res.incomplete()) {
        throw SectorError("feshbach-associate: A atom without a B partner (incomplete association)");
      }
      return std::move(res.state);
    }
    case CouplerKind::stark_phase: return stark_phase(state, {t[0], t[1]}, spec.phi);
    case CouplerKind::quarter_rotation:
      return quarter_rotation(state, {t[0], t[1]}, t[2], *spec.reservoir);
  }
  throw InvariantError("unknown coupler kind");
}

}  // namespace modent
