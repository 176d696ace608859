// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>
#include <Eigen/QR>

namespace modent {

/// Haar-distributed unit vector in C^d (normalized complex Gaussian).
template <typename Engine>
Eigen::VectorXcd haar_state(Eigen::Index d, Engine& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = {g(rng), g(rng)};
  return v / v.norm();
}

/// Haar-distributed d x d unitary (QR of a Ginibre matrix with the phases of
/// R's diagonal divided out).
template <typename Engine>
Eigen::MatrixXcd haar_unitary(Eigen::Index d, Engine& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd z(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) z(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace modent
