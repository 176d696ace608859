// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "modent/error.hpp"
#include "modent/fock/density.hpp"
#include "modent/fock/state.hpp"
#include "modent/tps/structure.hpp"

namespace modent {

inline constexpr double kSchmidtRankTolerance = 1e-10;

/// psi = sum_k coefficients[k] |left_k> (x) |right_k>, coefficients
/// descending. left_k / right_k are the columns of `left` / `right`.
struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;
  Eigen::MatrixXcd left;   ///< m x r
  Eigen::MatrixXcd right;  ///< n x r

  [[nodiscard]] Eigen::Index rank(double tol = kSchmidtRankTolerance) const {
    return (coefficients.array() > tol).count();
  }

  /// sum_k lambda_k u_k (x) v_k in the product frame (index i * n + j).
  [[nodiscard]] Eigen::VectorXcd product_frame_vector() const {
    const Eigen::Index m = left.rows();
    const Eigen::Index n = right.rows();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(m * n);
    for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
      for (Eigen::Index i = 0; i < m; ++i) {
        out.segment(i * n, n) += coefficients(k) * left(i, k) * right.col(k);
      }
    }
    return out;
  }
};

inline SchmidtDecomposition schmidt(const Eigen::VectorXcd& psi,
                                    const TensorProductStructure& tps) {
  const Eigen::MatrixXcd c = tps.coefficients(psi);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  // C = U S V^dagger  =>  psi = sum_k s_k U_k (x) conj(V_k)
  return {svd.singularValues(), svd.matrixU(), svd.matrixV().conjugate()};
}

inline SchmidtDecomposition schmidt(const PureState& state, const TensorProductStructure& tps) {
  tps.require_dimension(static_cast<std::size_t>(state.reg().dimension()));
  return schmidt(state.to_dense(), tps);
}

/// Global-basis vector rebuilt from a decomposition under `tps`.
inline Eigen::VectorXcd reconstruct(const SchmidtDecomposition& sd,
                                    const TensorProductStructure& tps) {
  return tps.from_product_frame(sd.product_frame_vector());
}

/// Entropy of entanglement in bits, -sum p log2 p with p = lambda^2.
inline double entanglement_entropy(const SchmidtDecomposition& sd) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < sd.coefficients.size(); ++k) {
    const double p = sd.coefficients(k) * sd.coefficients(k);
    if (p > 0.0) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

inline double entanglement_entropy(const PureState& state, const TensorProductStructure& tps) {
  return entanglement_entropy(schmidt(state, tps));
}

/// Partial transpose on the right factor, in the product frame.
inline Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& rho,
                                          const TensorProductStructure& tps) {
  const Eigen::MatrixXcd r = tps.to_product_frame(rho);
  const auto m = static_cast<Eigen::Index>(tps.left_dimension());
  const auto n = static_cast<Eigen::Index>(tps.right_dimension());
  Eigen::MatrixXcd out(m * n, m * n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = 0; l < n; ++l) out(i * n + j, k * n + l) = r(i * n + l, k * n + j);
  return out;
}

/// (||rho^{T_B}||_1 - 1) / 2.
inline double negativity(const Eigen::MatrixXcd& rho, const TensorProductStructure& tps) {
  tps.require_dimension(static_cast<std::size_t>(rho.rows()));
  const Eigen::MatrixXcd pt = partial_transpose(rho, tps);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
  const double trace_norm = es.eigenvalues().cwiseAbs().sum();
  return std::max((trace_norm - 1.0) / 2.0, 0.0);
}

inline double negativity(const DensityOperator& rho, const TensorProductStructure& tps) {
  return negativity(rho.matrix(), tps);
}

}  // namespace modent
