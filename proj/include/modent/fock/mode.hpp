// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file mode.hpp
 * @brief Mode labels, mode registers and mixed-radix configuration ranks.
 *
 * A register is an ordered list of bosonic modes, each truncated at a
 * maximal occupation. Configurations (occupation numbers per mode) are
 * ranked in mixed radix with the FIRST mode most significant, so that the
 * rank ordering coincides with the Kronecker-product ordering of the
 * per-mode Fock bases.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modent/error.hpp"

namespace modent {

/// Identifier of a mode inside a register.
enum class ModeId : std::uint16_t {};

constexpr std::uint16_t to_int(ModeId id) noexcept {
  return static_cast<std::uint16_t>(id);
}

enum class Species : std::uint8_t {
  photon_h,
  photon_v,
  spatial_path,
  atom_a,
  atom_b,
  molecule_ab,
  reservoir_trap,
};

constexpr std::string_view to_string(Species s) noexcept {
  switch (s) {
    case Species::photon_h: return "photon-H";
    case Species::photon_v: return "photon-V";
    case Species::spatial_path: return "spatial-path";
    case Species::atom_a: return "atom-A";
    case Species::atom_b: return "atom-B";
    case Species::molecule_ab: return "molecule-AB";
    case Species::reservoir_trap: return "reservoir-trap";
  }
  return "unknown";
}

struct ModeLabel {
  ModeId id{};
  Species species{Species::spatial_path};
  int cutoff{1};  ///< maximal occupation, >= 1

  [[nodiscard]] std::size_t levels() const noexcept {
    return static_cast<std::size_t>(cutoff) + 1;
  }
  friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
};

inline std::string describe(ModeId id) {
  return "mode " + std::to_string(to_int(id));
}

using BasisIndex = std::uint64_t;

/// Occupation numbers, aligned with the owning register's mode order.
struct Configuration {
  std::vector<int> occupations;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

inline constexpr std::uint64_t kDefaultDimensionBudget = std::uint64_t{1} << 20;

class ModeRegister {
 public:
  ModeRegister() = default;

  explicit ModeRegister(std::vector<ModeLabel> modes,
                        std::uint64_t dimension_budget = kDefaultDimensionBudget)
      : modes_(std::move(modes)), budget_(dimension_budget) {
    if (modes_.empty()) throw ArgumentError("mode register must not be empty");
    strides_.assign(modes_.size(), 1);
    dimension_ = 1;
    for (std::size_t k = modes_.size(); k-- > 0;) {
      const auto& m = modes_[k];
      if (m.cutoff < 1) {
        throw ArgumentError(describe(m.id) + ": cutoff must be >= 1, got " +
                            std::to_string(m.cutoff));
      }
      for (std::size_t j = k + 1; j < modes_.size(); ++j) {
        if (modes_[j].id == m.id) {
          throw ArgumentError("duplicate " + describe(m.id) + " in register");
        }
      }
      strides_[k] = dimension_;
      if (dimension_ > budget_ / m.levels()) {
        throw ArgumentError("register dimension exceeds the dimension budget of " +
                            std::to_string(budget_));
      }
      dimension_ *= m.levels();
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return modes_.size(); }
  [[nodiscard]] std::uint64_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::uint64_t budget() const noexcept { return budget_; }
  [[nodiscard]] std::span<const ModeLabel> modes() const noexcept { return modes_; }
  [[nodiscard]] const ModeLabel& operator[](std::size_t k) const { return modes_[k]; }

  [[nodiscard]] std::optional<std::size_t> find(ModeId id) const noexcept {
    for (std::size_t k = 0; k < modes_.size(); ++k) {
      if (modes_[k].id == id) return k;
    }
    return std::nullopt;
  }

  [[nodiscard]] std::size_t position(ModeId id) const {
    if (auto k = find(id)) return *k;
    throw ArgumentError(describe(id) + " is not part of the register");
  }

  [[nodiscard]] const ModeLabel& label(ModeId id) const { return modes_[position(id)]; }

  /// Throws naming the offending mode when an occupation is out of range.
  void validate(const Configuration& c) const {
    if (c.occupations.size() != modes_.size()) {
      throw ArgumentError("configuration has " + std::to_string(c.occupations.size()) +
                          " occupations, register has " + std::to_string(modes_.size()) +
                          " modes");
    }
    for (std::size_t k = 0; k < modes_.size(); ++k) {
      const int n = c.occupations[k];
      if (n < 0 || n > modes_[k].cutoff) {
        throw ArgumentError("invalid occupation " + std::to_string(n) + " for " +
                            describe(modes_[k].id) + " (cutoff " +
                            std::to_string(modes_[k].cutoff) + ")");
      }
    }
  }

  [[nodiscard]] BasisIndex rank(const Configuration& c) const {
    validate(c);
    BasisIndex r = 0;
    for (std::size_t k = 0; k < modes_.size(); ++k) {
      r += static_cast<BasisIndex>(c.occupations[k]) * strides_[k];
    }
    return r;
  }

  [[nodiscard]] Configuration unrank(BasisIndex r) const {
    if (r >= dimension_) {
      throw ArgumentError("basis index " + std::to_string(r) + " out of range");
    }
    Configuration c;
    c.occupations.resize(modes_.size());
    for (std::size_t k = 0; k < modes_.size(); ++k) {
      c.occupations[k] = static_cast<int>(r / strides_[k]);
      r %= strides_[k];
    }
    return c;
  }

  /// Occupation of the mode at position k for basis index r.
  [[nodiscard]] int occupation(BasisIndex r, std::size_t k) const noexcept {
    return static_cast<int>((r / strides_[k]) % modes_[k].levels());
  }

  /// Index obtained by changing the occupation at position k.
  [[nodiscard]] BasisIndex with_occupation(BasisIndex r, std::size_t k, int n) const noexcept {
    const auto old = static_cast<BasisIndex>(occupation(r, k));
    return r - old * strides_[k] + static_cast<BasisIndex>(n) * strides_[k];
  }

  [[nodiscard]] std::uint64_t stride(std::size_t k) const noexcept { return strides_[k]; }

  /// Register restricted to the given modes, in the given order.
  [[nodiscard]] ModeRegister subregister(std::span<const ModeId> ids) const {
    std::vector<ModeLabel> out;
    out.reserve(ids.size());
    for (auto id : ids) out.push_back(label(id));
    return ModeRegister(std::move(out), budget_);
  }

  /// Register with one extra mode appended (least significant).
  [[nodiscard]] ModeRegister appended(const ModeLabel& m) const {
    auto out = modes_;
    out.push_back(m);
    return ModeRegister(std::move(out), budget_);
  }

  /// Positions of every mode not listed in `ids`, in register order.
  [[nodiscard]] std::vector<ModeId> complement(std::span<const ModeId> ids) const {
    std::vector<ModeId> out;
    for (const auto& m : modes_) {
      if (std::find(ids.begin(), ids.end(), m.id) == ids.end()) out.push_back(m.id);
    }
    return out;
  }

  friend bool operator==(const ModeRegister& a, const ModeRegister& b) {
    return a.modes_ == b.modes_;
  }

 private:
  std::vector<ModeLabel> modes_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t dimension_{0};
  std::uint64_t budget_{kDefaultDimensionBudget};
};

/// Mixed-radix projection of a full basis index onto an ordered subset of
/// modes (first listed mode most significant).
class SubIndexer {
 public:
  SubIndexer(const ModeRegister& reg, std::span<const ModeId> ids) : reg_(&reg) {
    positions_.reserve(ids.size());
    for (auto id : ids) {
      const auto p = reg.position(id);
      if (std::find(positions_.begin(), positions_.end(), p) != positions_.end()) {
        throw ArgumentError("duplicate " + describe(id) + " in mode subset");
      }
      positions_.push_back(p);
    }
    dimension_ = 1;
    for (auto p : positions_) dimension_ *= reg[p].levels();
  }

  [[nodiscard]] std::uint64_t dimension() const noexcept { return dimension_; }

  [[nodiscard]] std::uint64_t project(BasisIndex r) const noexcept {
    std::uint64_t s = 0;
    for (auto p : positions_) {
      s = s * (*reg_)[p].levels() + static_cast<std::uint64_t>(reg_->occupation(r, p));
    }
    return s;
  }

  /// Replace the subset occupations of `r` by those encoded in `s`.
  [[nodiscard]] BasisIndex embed(BasisIndex r, std::uint64_t s) const noexcept {
    for (std::size_t q = positions_.size(); q-- > 0;) {
      const auto p = positions_[q];
      const auto levels = (*reg_)[p].levels();
      r = reg_->with_occupation(r, p, static_cast<int>(s % levels));
      s /= levels;
    }
    return r;
  }

  /// Basis index with the subset occupations zeroed.
  [[nodiscard]] BasisIndex clear(BasisIndex r) const noexcept { return embed(r, 0); }

 private:
  const ModeRegister* reg_;
  std::vector<std::size_t> positions_;
  std::uint64_t dimension_{1};
};

}  // namespace modent
