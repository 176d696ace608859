// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "modent/bell/chsh.hpp"

namespace modent {

struct OptimizedAngles {
  AngleQuad angles;
  double s{0.0};
  /// True when only the discrete number-conserving settings were reachable
  /// and all of them were enumerated.
  bool exhaustive{false};
};

inline constexpr int kChshGridPoints = 16;
inline constexpr double kChshFinalStep = 1e-8;

namespace detail {

/// All reachable quadruples are multiples of pi/2; enumerate them.
inline OptimizedAngles scan_number_conserving(const TwoSiteModel& model) {
  constexpr double quarter = std::numbers::pi / 2.0;
  OptimizedAngles best{{}, -INFINITY, true};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const AngleQuad q{i * quarter, j * quarter, k * quarter, l * quarter};
          const double s = model.chsh_value(q);
          if (s > best.s) best = {q, s, true};
        }
  return best;
}

}  // namespace detail

/// Largest exact-mode S reachable under the setup's capability. Continuous
/// settings: a 16^4 grid over [0, pi) followed by compass search (coordinate
/// steps, halved on failure down to 1e-8). Deterministic.
inline OptimizedAngles optimize_chsh_angles(const TwoSiteModel& model) {
  const auto& setup = model.setup();
  if (setup.capability == Capability::superselected && !setup.reference) {
    return detail::scan_number_conserving(model);
  }
  constexpr int g = kChshGridPoints;
  std::array<double, g> grid{};
  std::array<Eigen::Matrix2cd, g> obs1;
  std::array<Eigen::Matrix2cd, g> obs2;
  for (int i = 0; i < g; ++i) {
    grid[i] = std::numbers::pi * i / g;
    obs1[i] = model.observable(SiteLabel::beam_1, grid[i]);
    obs2[i] = model.observable(SiteLabel::beam_2, grid[i]);
  }
  std::array<std::array<double, g>, g> table{};
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) table[i][j] = model.correlator(obs1[i], obs2[j]);

  std::array<int, 4> arg{0, 0, 0, 0};
  double best = -INFINITY;
  for (int a = 0; a < g; ++a)
    for (int ap = 0; ap < g; ++ap)
      for (int b = 0; b < g; ++b)
        for (int bp = 0; bp < g; ++bp) {
          const double s = table[a][b] + table[a][bp] + table[ap][b] - table[ap][bp];
          if (s > best) {
            best = s;
            arg = {a, ap, b, bp};
          }
        }

  std::array<double, 4> x{grid[arg[0]], grid[arg[1]], grid[arg[2]], grid[arg[3]]};
  const auto value = [&](const std::array<double, 4>& v) {
    return model.chsh_value({v[0], v[1], v[2], v[3]});
  };
  double step = std::numbers::pi / g / 2.0;
  while (step >= kChshFinalStep) {
    bool improved = false;
    for (int c = 0; c < 4; ++c) {
      for (double dir : {+1.0, -1.0}) {
        auto trial = x;
        trial[c] += dir * step;
        if (setup.reference && trial[c] < 0.0) continue;
        const double s = value(trial);
        if (s > best) {
          best = s;
          x = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step /= 2.0;
  }
  // Fold angles back into [0, pi); A(a + pi) = A(a) only holds for ideal
  // rotations, so keep the raw values when a reference is in play.
  if (!setup.reference) {
    for (auto& v : x) v = std::fmod(std::fmod(v, std::numbers::pi) + std::numbers::pi, std::numbers::pi);
  }
  return {{x[0], x[1], x[2], x[3]}, value(x), false};
}

inline OptimizedAngles optimize_chsh_angles(const PureState& state, const ChshSetup& setup) {
  return optimize_chsh_angles(TwoSiteModel(state, setup));
}

}  // namespace modent
