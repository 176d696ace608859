// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file factorize.hpp
 * @brief A tensor product structure in which a given pure state is a product.
 *
 * For d = m * n, complete psi to an ordered orthonormal basis h_0 = psi,
 * h_1, ..., h_{d-1} and identify |v_i> (x) |w_j> with h_{i * n + j}
 * (0-based). Under that structure psi = |v_0> (x) |w_0>.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "modent/error.hpp"
#include "modent/tps/structure.hpp"

namespace modent {

constexpr bool is_prime(std::uint64_t d) noexcept {
  if (d < 2) return false;
  for (std::uint64_t k = 2; k * k <= d; ++k) {
    if (d % k == 0) return false;
  }
  return true;
}

namespace detail {

/// Candidates closer than this to psi are skipped outright.
inline constexpr double kParallelTolerance = 1e-12;
/// Residuals below this norm after orthogonalization are treated as
/// linearly dependent and skipped.
inline constexpr double kDependentResidual = 1e-10;

/// Orthonormal basis whose first column is psi, completed from the canonical
/// basis e_0, e_1, ... by modified Gram-Schmidt with one re-orthogonalization
/// pass.
inline Eigen::MatrixXcd complete_basis(const Eigen::VectorXcd& psi) {
  const Eigen::Index d = psi.size();
  Eigen::MatrixXcd basis(d, d);
  basis.col(0) = psi;
  Eigen::Index filled = 1;
  for (Eigen::Index k = 0; k < d && filled < d; ++k) {
    if (std::abs(psi(k)) > 1.0 - kParallelTolerance) continue;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v(k) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index q = 0; q < filled; ++q) {
        v -= basis.col(q).dot(v) * basis.col(q);
      }
    }
    const double len = v.norm();
    if (len < kDependentResidual) continue;
    basis.col(filled++) = v / len;
  }
  if (filled != d) throw InvariantError("orthonormal completion produced too few vectors");
  return basis;
}

}  // namespace detail

inline TensorProductStructure factorizing_tps(const Eigen::VectorXcd& psi, std::size_t m,
                                              std::size_t n) {
  const auto d = static_cast<std::uint64_t>(psi.size());
  if (is_prime(d)) {
    throw ArgumentError("no factorizing structure: need a nonprime dimension d = mn, got d = " +
                        std::to_string(d) + " (prime)");
  }
  if (m < 2 || n < 2 || m * n != d) {
    throw ArgumentError("no factorizing structure: need a nonprime dimension d = mn with m, n >= "
                        "2; got d = " + std::to_string(d) + ", m = " + std::to_string(m) +
                        ", n = " + std::to_string(n));
  }
  if (std::abs(psi.norm() - 1.0) > kNormTolerance) {
    throw ArgumentError("factorizing_tps: state is not normalized (norm " +
                        std::to_string(psi.norm()) + ")");
  }
  std::vector<std::uint64_t> map(d);
  for (std::uint64_t k = 0; k < d; ++k) map[k] = k;
  return {m, n, std::move(map), detail::complete_basis(psi)};
}

}  // namespace modent
