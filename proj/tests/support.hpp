// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the unit tests.

#pragma once

#include <cmath>
#include <complex>
#include <algorithm>
#include <initializer_list>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "modent/modent.hpp"

namespace modent::test {

inline ModeLabel mode(int id, Species s = Species::spatial_path, int cutoff = 1) {
  return {ModeId{static_cast<std::uint16_t>(id)}, s, cutoff};
}

inline ModeId id(int k) { return ModeId{static_cast<std::uint16_t>(k)}; }

inline Configuration cfg(std::initializer_list<int> occ) { return {std::vector<int>(occ)}; }

/// Haar-random state on the full register (dense, small registers only).
template <typename Engine>
PureState random_state(const ModeRegister& reg, Engine& rng) {
  return PureState::from_dense(reg, haar_state(static_cast<Eigen::Index>(reg.dimension()), rng));
}

/// States equal up to a global phase.
inline ::testing::AssertionResult same_state(const PureState& a, const PureState& b,
                                             double tol = 1e-10) {
  const double f = fidelity(a, b);
  if (f >= 1.0 - tol && std::abs(a.norm() - b.norm()) < tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "fidelity " << f << ", norms " << a.norm() << " / "
                                       << b.norm();
}

inline double max_abs_diff(const PureState& a, const PureState& b) {
  double m = 0.0;
  for (const auto& [r, x] : a.amplitudes()) m = std::max(m, std::abs(x - b.amplitude(r)));
  for (const auto& [r, y] : b.amplitudes()) m = std::max(m, std::abs(y - a.amplitude(r)));
  return m;
}

/// Flying site {B, BA} plus one reservoir trap; helpers for brute-force
/// evolution and the reduced single-site channel.
struct ReservoirBench {
  ReservoirSpec spec;
  FlyingSite site{id(0), id(1)};
  ModeId trap{id(2)};
  ModeRegister reg{{mode(0, Species::atom_b), mode(1, Species::molecule_ab)}};

  /// Site state after the rotation, input qubit 0 = |B>, 1 = |BA>.
  [[nodiscard]] PureState evolve(int qubit, double angle) const {
    const auto in = basis_state(reg, qubit == 0 ? cfg({1, 0}) : cfg({0, 1}));
    return association_rotation(prepare_reservoir(in, trap, spec), site, trap, spec, angle);
  }

  /// E(|x><y|) on the site, basis (B, BA), reservoir traced out.
  [[nodiscard]] Eigen::Matrix2cd channel(int x, int y, double angle) const {
    const auto px = evolve(x, angle);
    const auto py = evolve(y, angle);
    const auto& r = px.reg();
    const auto pa = r.position(site.atom);
    const auto pm = r.position(site.molecule);
    const auto pr = r.position(trap);
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    const auto q = [&](BasisIndex b) { return r.occupation(b, pa) == 1 ? 0 : 1; };
    for (const auto& [b1, a1] : px.amplitudes()) {
      for (const auto& [b2, a2] : py.amplitudes()) {
        if (r.occupation(b1, pr) == r.occupation(b2, pr) && r.occupation(b1, pm) + r.occupation(b1, pa) == 1 &&
            r.occupation(b2, pm) + r.occupation(b2, pa) == 1) {
          out(q(b1), q(b2)) += a1 * std::conj(a2);
        }
      }
    }
    return out;
  }

  /// Off-diagonal modulus of the site state after rotating |B>.
  [[nodiscard]] double coherence(double angle) const {
    const auto psi = evolve(0, angle);
    const auto rho = partial_trace(psi, {site.atom, site.molecule}).matrix();
    // sub-index n_B * 2 + n_BA: |B> = 2, |BA> = 1
    return std::abs(rho(2, 1));
  }

  /// Process fidelity to the quarter rotation |B> -> (|BA> + |B>)/sqrt2,
  /// |BA> -> (|BA> - |B>)/sqrt2, via the Choi matrices.
  [[nodiscard]] double process_fidelity(double angle) const {
    Eigen::Matrix2cd u;  // columns: images of |B>, |BA> in basis (B, BA)
    const double h = 1.0 / std::sqrt(2.0);
    u << h, -h, h, h;
    Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) choi.block<2, 2>(2 * x, 2 * y) = channel(x, y, angle) / 2.0;
    Eigen::Vector4cd ideal;
    for (int x = 0; x < 2; ++x) ideal.segment<2>(2 * x) = u.col(x) / std::sqrt(2.0);
    return (ideal.adjoint() * choi * ideal)(0, 0).real();
  }
};

/// Oscillator oracle: two-mode squeezed vacuum entropy with
/// r = ln(w+/w-)/4, independent of the library's covariance route.
inline double squeezing_entropy(double mass, double omega, double kappa) {
  const double wp = std::sqrt(omega * omega + kappa / mass);
  const double wm = std::sqrt(omega * omega - kappa / mass);
  const double r = 0.25 * std::log(wp / wm);
  const double c2 = std::cosh(r) * std::cosh(r);
  const double s2 = std::sinh(r) * std::sinh(r);
  return s2 == 0.0 ? 0.0 : c2 * std::log2(c2) - s2 * std::log2(s2);
}

inline ReservoirSpec coherent_reservoir(double nbar) {
  return {nbar, std::max(64, ReservoirSpec::minimum_cutoff(nbar)), ReservoirKind::coherent,
          RabiScaling::sqrt_occupation};
}

inline ReservoirSpec fock_reservoir(int n, int cutoff = 64) {
  return {static_cast<double>(n), cutoff, ReservoirKind::fock, RabiScaling::sqrt_occupation};
}

}  // namespace modent::test
