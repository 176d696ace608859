// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <span>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "modent/error.hpp"
#include "modent/fock/mode.hpp"
#include "modent/fock/state.hpp"

namespace modent {

/// Dense density matrix on a (sub-)register. Basis ordering follows the
/// register's mixed-radix rank.
class DensityOperator {
 public:
  DensityOperator(ModeRegister reg, Eigen::MatrixXcd matrix)
      : reg_(std::move(reg)), matrix_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(reg_.dimension());
    if (matrix_.rows() != d || matrix_.cols() != d) {
      throw ArgumentError("density matrix shape does not match register dimension " +
                          std::to_string(d));
    }
  }

  [[nodiscard]] const ModeRegister& reg() const noexcept { return reg_; }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  [[nodiscard]] Eigen::Index dimension() const noexcept { return matrix_.rows(); }

  [[nodiscard]] double trace() const { return matrix_.trace().real(); }
  [[nodiscard]] double purity() const { return (matrix_ * matrix_).trace().real(); }

  [[nodiscard]] Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }

  /// Throws InvariantError when trace, hermiticity or positivity is off by
  /// more than `tol`.
  void validate(double tol = kNormTolerance) const {
    if (std::abs(trace() - 1.0) > tol) {
      throw InvariantError("density operator trace " + std::to_string(trace()) + " != 1");
    }
    const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) throw InvariantError("density operator not Hermitian: " + sci(herm));
    const double lowest = eigenvalues().minCoeff();
    if (lowest < -tol) {
      throw InvariantError("density operator has negative eigenvalue " + sci(lowest));
    }
  }

 private:
  ModeRegister reg_;
  Eigen::MatrixXcd matrix_;
};

/// Reduced density operator on the modes in `keep` (in the order given).
inline DensityOperator partial_trace(const PureState& state, std::span<const ModeId> keep) {
  if (keep.empty()) throw ArgumentError("partial_trace: keep set must not be empty");
  const SubIndexer kept(state.reg(), keep);
  if (kept.dimension() > kDenseLimit) {
    throw ArgumentError("partial_trace: kept subspace dimension " +
                        std::to_string(kept.dimension()) + " too large");
  }
  // Group amplitudes by the configuration of the traced-out modes.
  std::map<BasisIndex, std::vector<std::pair<Eigen::Index, Amplitude>>> by_env;
  for (const auto& [r, a] : state.amplitudes()) {
    by_env[kept.clear(r)].emplace_back(static_cast<Eigen::Index>(kept.project(r)), a);
  }
  const auto d = static_cast<Eigen::Index>(kept.dimension());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& [env, column] : by_env) {
    for (const auto& [i, ai] : column) {
      for (const auto& [j, aj] : column) rho(i, j) += ai * std::conj(aj);
    }
  }
  const double tr = rho.trace().real();
  if (tr <= 0.0) throw ArgumentError("partial_trace: zero state");
  rho /= tr;
  return DensityOperator(state.reg().subregister(keep), std::move(rho));
}

inline DensityOperator partial_trace(const PureState& state, std::initializer_list<ModeId> keep) {
  return partial_trace(state, std::span<const ModeId>(keep.begin(), keep.size()));
}

}  // namespace modent
