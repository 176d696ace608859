// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file state.hpp
 * @brief Sparse pure states over occupation-number configurations.
 *
 * Amplitudes are stored in a map keyed by the mixed-radix configuration
 * rank. Entries with modulus below kPruneThreshold are dropped after every
 * operation. States are values: every operation returns a new state.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "modent/error.hpp"
#include "modent/fock/mode.hpp"

namespace modent {

using Amplitude = std::complex<double>;

inline constexpr double kPruneThreshold = 1e-14;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;
/// Largest dimension we are willing to materialize as a dense vector/matrix.
inline constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 16;

class PureState {
 public:
  using AmplitudeMap = std::map<BasisIndex, Amplitude>;

  PureState() = default;

  /// Takes amplitudes as given (no normalization); prunes tiny entries.
  PureState(ModeRegister reg, AmplitudeMap amps) : reg_(std::move(reg)), amps_(std::move(amps)) {
    for (const auto& [r, a] : amps_) {
      if (r >= reg_.dimension()) {
        throw ArgumentError("basis index " + std::to_string(r) + " out of range");
      }
    }
    prune();
  }

  [[nodiscard]] const ModeRegister& reg() const noexcept { return reg_; }
  [[nodiscard]] const AmplitudeMap& amplitudes() const noexcept { return amps_; }
  [[nodiscard]] std::size_t support_size() const noexcept { return amps_.size(); }

  [[nodiscard]] Amplitude amplitude(BasisIndex r) const {
    auto it = amps_.find(r);
    return it == amps_.end() ? Amplitude{} : it->second;
  }
  [[nodiscard]] Amplitude amplitude(const Configuration& c) const {
    return amplitude(reg_.rank(c));
  }

  [[nodiscard]] double norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& [r, a] : amps_) s += std::norm(a);
    return s;
  }
  [[nodiscard]] double norm() const noexcept { return std::sqrt(norm_squared()); }

  [[nodiscard]] PureState normalized() const {
    const double n = norm();
    if (n == 0.0) throw ArgumentError("cannot normalize the zero vector");
    AmplitudeMap out;
    for (const auto& [r, a] : amps_) out.emplace(r, a / n);
    return PureState(reg_, std::move(out));
  }

  [[nodiscard]] Eigen::VectorXcd to_dense() const {
    if (reg_.dimension() > kDenseLimit) {
      throw ArgumentError("state dimension " + std::to_string(reg_.dimension()) +
                          " too large for a dense vector");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(reg_.dimension()));
    for (const auto& [r, a] : amps_) v(static_cast<Eigen::Index>(r)) = a;
    return v;
  }

  static PureState from_dense(ModeRegister reg, const Eigen::VectorXcd& v) {
    if (static_cast<std::uint64_t>(v.size()) != reg.dimension()) {
      throw ArgumentError("dense vector size does not match register dimension");
    }
    AmplitudeMap amps;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) >= kPruneThreshold) amps.emplace(static_cast<BasisIndex>(i), v(i));
    }
    return PureState(std::move(reg), std::move(amps));
  }

 private:
  void prune() {
    std::erase_if(amps_, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
  }

  ModeRegister reg_;
  AmplitudeMap amps_;
};

/// Normalized state with the given support. Repeated configurations add up.
inline PureState make_state(const ModeRegister& reg,
                            std::span<const std::pair<Configuration, Amplitude>> terms) {
  if (terms.empty()) throw ArgumentError("make_state: no terms given");
  PureState::AmplitudeMap amps;
  for (const auto& [c, a] : terms) amps[reg.rank(c)] += a;
  PureState raw(reg, std::move(amps));
  if (raw.norm() < kPruneThreshold) throw ArgumentError("make_state: all amplitudes are zero");
  return raw.normalized();
}

inline PureState make_state(const ModeRegister& reg,
                            std::initializer_list<std::pair<Configuration, Amplitude>> terms) {
  return make_state(reg, std::span<const std::pair<Configuration, Amplitude>>(terms.begin(),
                                                                              terms.size()));
}

inline PureState basis_state(const ModeRegister& reg, const Configuration& c) {
  return PureState(reg, {{reg.rank(c), Amplitude{1.0}}});
}

inline void require_same_register(const PureState& a, const PureState& b) {
  if (!(a.reg() == b.reg())) throw ArgumentError("states live on different mode registers");
}

/// <a|b>, antilinear in the first argument.
inline Amplitude inner_product(const PureState& a, const PureState& b) {
  require_same_register(a, b);
  Amplitude s{};
  const auto& small = a.support_size() <= b.support_size() ? a : b;
  const auto& large = a.support_size() <= b.support_size() ? b : a;
  for (const auto& [r, x] : small.amplitudes()) {
    const Amplitude y = large.amplitude(r);
    s += (&small == &a) ? std::conj(x) * y : std::conj(y) * x;
  }
  return s;
}

/// |<a|b>|^2; equality of states up to global phase is fidelity ~ 1.
inline double fidelity(const PureState& a, const PureState& b) {
  return std::norm(inner_product(a, b));
}

/// Linear combination alpha*a + beta*b (not normalized).
inline PureState superpose(Amplitude alpha, const PureState& a, Amplitude beta,
                           const PureState& b) {
  require_same_register(a, b);
  PureState::AmplitudeMap out;
  for (const auto& [r, x] : a.amplitudes()) out[r] += alpha * x;
  for (const auto& [r, y] : b.amplitudes()) out[r] += beta * y;
  return PureState(a.reg(), std::move(out));
}

/// Applies a linear map given by its action on basis configurations.
/// `action(r, emit)` must call `emit(r_out, coefficient)` for every output.
template <typename Action>
PureState apply_basis_map(const PureState& state, Action&& action) {
  PureState::AmplitudeMap out;
  for (const auto& [r, a] : state.amplitudes()) {
    action(r, [&](BasisIndex r_out, Amplitude coeff) { out[r_out] += coeff * a; });
  }
  return PureState(state.reg(), std::move(out));
}

/// Frobenius norm of U^dagger U - 1.
inline double unitarity_deviation(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).norm();
}

inline void require_unitary(const Eigen::MatrixXcd& u, double tol = kUnitaryTolerance) {
  if (u.rows() != u.cols()) {
    throw ArgumentError("matrix is not square (" + std::to_string(u.rows()) + "x" +
                        std::to_string(u.cols()) + ")");
  }
  const double dev = unitarity_deviation(u);
  if (!(dev <= tol)) {
    throw ArgumentError("matrix is not unitary: deviation ||U^dagger U - 1|| = " + sci(dev));
  }
}

/// Applies `u` on the subspace spanned by the listed modes' configurations.
/// Row/column index of `u` is the mixed-radix rank over `modes` (first mode
/// most significant); every other mode is left untouched.
inline PureState apply_unitary_on_modes(const PureState& state, std::span<const ModeId> modes,
                                        const Eigen::MatrixXcd& u) {
  const SubIndexer sub(state.reg(), modes);
  if (static_cast<std::uint64_t>(u.rows()) != sub.dimension()) {
    throw ArgumentError("unitary has dimension " + std::to_string(u.rows()) +
                        ", mode subspace has " + std::to_string(sub.dimension()));
  }
  require_unitary(u);
  return apply_basis_map(state, [&](BasisIndex r, auto&& emit) {
    const auto col = static_cast<Eigen::Index>(sub.project(r));
    for (Eigen::Index row = 0; row < u.rows(); ++row) {
      const Amplitude c = u(row, col);
      if (c != Amplitude{}) emit(sub.embed(r, static_cast<std::uint64_t>(row)), c);
    }
  });
}

inline PureState apply_unitary_on_modes(const PureState& state,
                                        std::initializer_list<ModeId> modes,
                                        const Eigen::MatrixXcd& u) {
  return apply_unitary_on_modes(state, std::span<const ModeId>(modes.begin(), modes.size()), u);
}

/// Tensor product of `state` with a new mode (appended last) in the local
/// superposition sum_n local[n] |n>. `local` must have mode.levels() entries.
inline PureState tensor_append(const PureState& state, const ModeLabel& mode,
                               std::span<const Amplitude> local) {
  if (local.size() != mode.levels()) {
    throw ArgumentError("local amplitudes for " + describe(mode.id) + " must have " +
                        std::to_string(mode.levels()) + " entries");
  }
  ModeRegister reg = state.reg().appended(mode);
  const std::uint64_t levels = mode.levels();
  PureState::AmplitudeMap out;
  for (const auto& [r, a] : state.amplitudes()) {
    for (std::uint64_t n = 0; n < levels; ++n) {
      const Amplitude c = a * local[n];
      if (std::abs(c) >= kPruneThreshold) out.emplace(r * levels + n, c);
    }
  }
  return PureState(std::move(reg), std::move(out));
}

}  // namespace modent
