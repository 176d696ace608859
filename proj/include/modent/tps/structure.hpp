// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file structure.hpp
 * @brief Explicit bipartite tensor product structures H = V^m (x) W^n.
 *
 * A structure is an index map (i, j) -> global basis index, 0 <= i < m,
 * 0 <= j < n, together with an optional unitary U whose columns are the
 * "global basis" the index map refers to. The product vector |v_i>(x)|w_j>
 * is identified with U e_{map(i, j)} (or e_{map(i, j)} when U is absent).
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "modent/error.hpp"
#include "modent/fock/mode.hpp"
#include "modent/fock/state.hpp"

namespace modent {

class TensorProductStructure {
 public:
  TensorProductStructure(std::size_t m, std::size_t n, std::vector<std::uint64_t> index_map,
                         std::optional<Eigen::MatrixXcd> basis = std::nullopt)
      : m_(m), n_(n), map_(std::move(index_map)), basis_(std::move(basis)) {
    if (m_ == 0 || n_ == 0) throw ArgumentError("tensor factors must have dimension >= 1");
    const std::size_t d = m_ * n_;
    if (map_.size() != d) {
      throw ArgumentError("index map has " + std::to_string(map_.size()) + " entries, expected " +
                          std::to_string(d));
    }
    std::vector<bool> hit(d, false);
    for (auto g : map_) {
      if (g >= d || hit[g]) throw ArgumentError("index map is not a bijection onto 0.." +
                                                std::to_string(d - 1));
      hit[g] = true;
    }
    if (basis_) {
      if (static_cast<std::size_t>(basis_->rows()) != d) {
        throw ArgumentError("generating unitary has wrong dimension");
      }
      require_unitary(*basis_);
    }
  }

  /// The identity structure: (i, j) -> i * n + j.
  static TensorProductStructure canonical(std::size_t m, std::size_t n) {
    std::vector<std::uint64_t> map(m * n);
    for (std::size_t k = 0; k < map.size(); ++k) map[k] = k;
    return {m, n, std::move(map)};
  }

  [[nodiscard]] std::size_t left_dimension() const noexcept { return m_; }
  [[nodiscard]] std::size_t right_dimension() const noexcept { return n_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return m_ * n_; }
  [[nodiscard]] std::span<const std::uint64_t> index_map() const noexcept { return map_; }
  [[nodiscard]] const std::optional<Eigen::MatrixXcd>& basis() const noexcept { return basis_; }

  [[nodiscard]] std::uint64_t global_index(std::size_t i, std::size_t j) const {
    return map_.at(i * n_ + j);
  }

  /// |v_i> (x) |w_j> as a vector in the global basis.
  [[nodiscard]] Eigen::VectorXcd product_vector(std::size_t i, std::size_t j) const {
    const auto g = static_cast<Eigen::Index>(global_index(i, j));
    if (basis_) return basis_->col(g);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension()));
    e(g) = 1.0;
    return e;
  }

  /// Coefficient matrix C(i, j) = (<v_i| (x) <w_j|) |psi>.
  [[nodiscard]] Eigen::MatrixXcd coefficients(const Eigen::VectorXcd& psi) const {
    require_dimension(static_cast<std::size_t>(psi.size()));
    const Eigen::VectorXcd rotated = basis_ ? Eigen::VectorXcd(basis_->adjoint() * psi) : psi;
    Eigen::MatrixXcd c(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            rotated(static_cast<Eigen::Index>(map_[i * n_ + j]));
      }
    }
    return c;
  }

  /// Operator expressed in the product basis, row/column index i * n + j.
  [[nodiscard]] Eigen::MatrixXcd to_product_frame(const Eigen::MatrixXcd& op) const {
    require_dimension(static_cast<std::size_t>(op.rows()));
    const Eigen::MatrixXcd rotated = basis_ ? Eigen::MatrixXcd(basis_->adjoint() * op * *basis_)
                                            : op;
    const auto d = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXcd out(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        out(a, b) = rotated(static_cast<Eigen::Index>(map_[static_cast<std::size_t>(a)]),
                            static_cast<Eigen::Index>(map_[static_cast<std::size_t>(b)]));
      }
    }
    return out;
  }

  /// Global-basis vector of a product-frame vector (index i * n + j).
  [[nodiscard]] Eigen::VectorXcd from_product_frame(const Eigen::VectorXcd& x) const {
    require_dimension(static_cast<std::size_t>(x.size()));
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(x.size());
    for (std::size_t k = 0; k < map_.size(); ++k) {
      g(static_cast<Eigen::Index>(map_[k])) = x(static_cast<Eigen::Index>(k));
    }
    return basis_ ? Eigen::VectorXcd(*basis_ * g) : g;
  }

  void require_dimension(std::size_t d) const {
    if (d != dimension()) {
      throw ArgumentError("dimension " + std::to_string(d) + " does not match structure " +
                          std::to_string(m_) + "x" + std::to_string(n_));
    }
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<std::uint64_t> map_;
  std::optional<Eigen::MatrixXcd> basis_;
};

/// Structure splitting a mode register into the modes in `left` and the rest.
inline TensorProductStructure bipartition(const ModeRegister& reg, std::span<const ModeId> left) {
  const auto right = reg.complement(left);
  if (left.empty() || right.empty()) {
    throw ArgumentError("bipartition needs modes on both sides");
  }
  const SubIndexer li(reg, left);
  const SubIndexer ri(reg, right);
  const auto m = static_cast<std::size_t>(li.dimension());
  const auto n = static_cast<std::size_t>(ri.dimension());
  std::vector<std::uint64_t> map(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) map[i * n + j] = ri.embed(li.embed(0, i), j);
  }
  return {m, n, std::move(map)};
}

inline TensorProductStructure bipartition(const ModeRegister& reg,
                                          std::initializer_list<ModeId> left) {
  return bipartition(reg, std::span<const ModeId>(left.begin(), left.size()));
}

/// The structure whose product vectors are `u` applied to those of `base`.
inline TensorProductStructure conjugated_tps(const TensorProductStructure& base,
                                             const Eigen::MatrixXcd& u) {
  require_unitary(u);
  base.require_dimension(static_cast<std::size_t>(u.rows()));
  Eigen::MatrixXcd basis = base.basis() ? Eigen::MatrixXcd(u * *base.basis()) : u;
  const auto map = base.index_map();
  return {base.left_dimension(), base.right_dimension(),
          std::vector<std::uint64_t>(map.begin(), map.end()), std::move(basis)};
}

}  // namespace modent
