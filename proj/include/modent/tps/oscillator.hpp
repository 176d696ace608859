// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oscillator.hpp
 * @brief Ground-state entanglement of two coupled harmonic oscillators.
 *
 * H = p1^2/2m + p2^2/2m + m w^2 (x1^2 + x2^2)/2 + kappa x1 x2   (hbar = 1)
 *
 * The normal modes x_pm = (x1 +- x2)/sqrt(2) have frequencies
 * w_pm = sqrt(w^2 +- kappa/m). The ground state is computed by exact
 * diagonalization in the truncated Fock basis of the two original
 * oscillators, then examined under two bipartitions: original oscillators,
 * and normal modes (reached through the passive 50/50 mode rotation, which
 * preserves total quantum number and is applied exactly sector by sector).
 */

#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "modent/error.hpp"
#include "modent/tps/schmidt.hpp"

namespace modent {

struct OscillatorPair {
  double mass{1.0};
  double omega{1.0};
  double coupling{0.0};  ///< kappa, |kappa| < m w^2

  [[nodiscard]] double omega_plus() const { return std::sqrt(omega * omega + coupling / mass); }
  [[nodiscard]] double omega_minus() const { return std::sqrt(omega * omega - coupling / mass); }

  void validate() const {
    if (!(mass > 0.0) || !(omega > 0.0) || !std::isfinite(coupling)) {
      throw ArgumentError("oscillator pair needs positive mass and frequency");
    }
    if (!(std::abs(coupling) < mass * omega * omega)) {
      throw SectorError("unstable oscillator pair: |kappa| = " + std::to_string(coupling) +
                        " must be below m w^2 = " + std::to_string(mass * omega * omega) +
                        " (imaginary normal-mode frequency)");
    }
  }
};

struct OscillatorEntropy {
  double original_bits{0.0};     ///< oscillator 1 | oscillator 2
  double normal_mode_bits{0.0};  ///< normal mode + | normal mode -
  double lower_cutoff_bits{0.0}; ///< original_bits recomputed at cutoff - 2
  double truncation_weight{0.0}; ///< ground-state weight outside the rotation sectors
  bool converged{true};          ///< |original - lower_cutoff| <= tolerance
};

inline constexpr double kOscillatorConvergenceTolerance = 1e-6;

namespace detail {

/// Ground state of the truncated two-mode Hamiltonian, index n1 * levels + n2.
inline Eigen::VectorXd oscillator_ground_state(const OscillatorPair& pair, int levels) {
  const Eigen::Index dim = static_cast<Eigen::Index>(levels) * levels;
  // x_k = (a_k + a_k^dagger) / sqrt(2 m w)
  const double g = pair.coupling / (2.0 * pair.mass * pair.omega);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const auto idx = [levels](int n1, int n2) { return static_cast<Eigen::Index>(n1) * levels + n2; };
  for (int n1 = 0; n1 < levels; ++n1) {
    for (int n2 = 0; n2 < levels; ++n2) {
      const Eigen::Index r = idx(n1, n2);
      h(r, r) = pair.omega * (n1 + n2 + 1);
      for (int d1 : {-1, 1}) {
        const int m1 = n1 + d1;
        if (m1 < 0 || m1 >= levels) continue;
        const double e1 = std::sqrt(static_cast<double>(std::max(n1, m1)));
        for (int d2 : {-1, 1}) {
          const int m2 = n2 + d2;
          if (m2 < 0 || m2 >= levels) continue;
          const double e2 = std::sqrt(static_cast<double>(std::max(n2, m2)));
          h(idx(m1, m2), r) += g * e1 * e2;
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw InvariantError("oscillator diagonalization failed");
  return es.eigenvectors().col(0);
}

inline double bipartite_entropy(const Eigen::VectorXd& psi, int levels) {
  const auto tps = TensorProductStructure::canonical(static_cast<std::size_t>(levels),
                                                     static_cast<std::size_t>(levels));
  return entanglement_entropy(schmidt(Eigen::VectorXcd(psi.cast<std::complex<double>>()), tps));
}

/// Applies exp(pi/4 (a1^dag a2 - a2^dag a1)) on every total-number sector
/// N < levels, which maps (a1, a2) onto the normal-mode ladder operators.
/// Components with n1 + n2 >= levels are dropped; their weight is returned.
inline double rotate_to_normal_modes(Eigen::VectorXd& psi, int levels) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(psi.size());
  double kept = 0.0;
  for (int total = 0; total < levels; ++total) {
    const int size = total + 1;
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(size, size);
    // basis |k, total - k>
    for (int k = 0; k < size; ++k) {
      if (k + 1 < size) gen(k + 1, k) += std::sqrt(static_cast<double>((k + 1) * (total - k)));
      if (k > 0) gen(k - 1, k) -= std::sqrt(static_cast<double>(k * (total - k + 1)));
    }
    const Eigen::MatrixXd rot = (0.25 * M_PI * gen).exp();
    Eigen::VectorXd sector(size);
    for (int k = 0; k < size; ++k) sector(k) = psi(static_cast<Eigen::Index>(k) * levels + (total - k));
    kept += sector.squaredNorm();
    const Eigen::VectorXd rotated = rot * sector;
    for (int k = 0; k < size; ++k) out(static_cast<Eigen::Index>(k) * levels + (total - k)) = rotated(k);
  }
  psi = out / out.norm();
  return std::max(0.0, 1.0 - kept);
}

}  // namespace detail

/// Entanglement of the ground state, with `cutoff` Fock levels per oscillator.
inline OscillatorEntropy coupled_oscillator_entropy(const OscillatorPair& pair, int cutoff) {
  pair.validate();
  if (cutoff < 8) throw ArgumentError("oscillator cutoff must be >= 8, got " + std::to_string(cutoff));
  OscillatorEntropy out;
  Eigen::VectorXd ground = detail::oscillator_ground_state(pair, cutoff);
  out.original_bits = detail::bipartite_entropy(ground, cutoff);
  out.lower_cutoff_bits =
      detail::bipartite_entropy(detail::oscillator_ground_state(pair, cutoff - 2), cutoff - 2);
  out.converged =
      std::abs(out.original_bits - out.lower_cutoff_bits) <= kOscillatorConvergenceTolerance;
  out.truncation_weight = detail::rotate_to_normal_modes(ground, cutoff);
  out.normal_mode_bits = detail::bipartite_entropy(ground, cutoff);
  return out;
}

/// Closed-form ground-state entanglement (bits) from the symplectic
/// eigenvalue of oscillator 1's reduced covariance matrix.
inline double gaussian_ground_state_entropy(const OscillatorPair& pair) {
  pair.validate();
  const double wp = pair.omega_plus();
  const double wm = pair.omega_minus();
  const double m = pair.mass;
  // <x1^2> and <p1^2> average the normal-mode ground-state variances.
  const double x2 = 0.5 * (1.0 / (2.0 * m * wp) + 1.0 / (2.0 * m * wm));
  const double p2 = 0.5 * (m * wp / 2.0 + m * wm / 2.0);
  const double nu = std::sqrt(x2 * p2);  // >= 1/2
  const double hi = nu + 0.5;
  const double lo = nu - 0.5;
  double s = hi * std::log2(hi);
  if (lo > 0.0) s -= lo * std::log2(lo);
  return std::max(s, 0.0);
}

}  // namespace modent
