// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "support.hpp"

namespace modent {
namespace {

using test::squeezing_entropy;

TEST(Oscillator, UncoupledIsProduct) {
  const auto e = coupled_oscillator_entropy({1.0, 1.0, 0.0}, 12);
  EXPECT_NEAR(e.original_bits, 0.0, 1e-10);
  EXPECT_NEAR(e.normal_mode_bits, 0.0, 1e-10);
  EXPECT_NEAR(gaussian_ground_state_entropy({1.0, 1.0, 0.0}), 0.0, 1e-14);
}

TEST(Oscillator, MatchesSqueezingOracleAtCutoff24) {
  for (double ratio : {0.1, 0.3, 0.5, 0.7}) {
    const OscillatorPair pair{1.0, 1.0, ratio};
    const auto e = coupled_oscillator_entropy(pair, 24);
    const double oracle = squeezing_entropy(1.0, 1.0, ratio);
    EXPECT_NEAR(e.original_bits, oracle, 1e-3) << "ratio " << ratio;
    EXPECT_LT(e.normal_mode_bits, 1e-6) << "ratio " << ratio;
  }
}

TEST(Oscillator, NegativeCouplingIsSymmetric) {
  const auto pos = coupled_oscillator_entropy({1.0, 1.0, 0.4}, 20);
  const auto neg = coupled_oscillator_entropy({1.0, 1.0, -0.4}, 20);
  EXPECT_NEAR(pos.original_bits, neg.original_bits, 1e-8);
  EXPECT_LT(neg.normal_mode_bits, 1e-6);
}

TEST(Oscillator, ClosedFormsAgree) {
  for (double mass : {0.5, 1.0, 3.0}) {
    for (double ratio : {0.05, 0.2, 0.45, 0.9}) {
      const double omega = 1.3;
      const double kappa = ratio * mass * omega * omega;
      EXPECT_NEAR(gaussian_ground_state_entropy({mass, omega, kappa}),
                  squeezing_entropy(mass, omega, kappa), 1e-12);
    }
  }
}

TEST(Oscillator, MonotoneInCouplingStrength) {
  double prev = -1.0;
  for (double ratio = 0.0; ratio <= 0.6 + 1e-12; ratio += 0.05) {
    const double s = coupled_oscillator_entropy({1.0, 1.0, ratio}, 20).original_bits;
    EXPECT_GT(s, prev) << "ratio " << ratio;
    prev = s;
  }
}

TEST(Oscillator, ScaleInvariance) {
  // Entropy depends on kappa / (m w^2) only.
  const auto a = coupled_oscillator_entropy({1.0, 1.0, 0.3}, 20);
  const auto b = coupled_oscillator_entropy({2.0, 1.5, 0.3 * 2.0 * 2.25}, 20);
  EXPECT_NEAR(a.original_bits, b.original_bits, 1e-8);
}

TEST(Oscillator, ConvergenceFlag) {
  EXPECT_TRUE(coupled_oscillator_entropy({1.0, 1.0, 0.3}, 24).converged);
  const auto rough = coupled_oscillator_entropy({1.0, 1.0, 0.95}, 8);
  EXPECT_FALSE(rough.converged);
}

TEST(Oscillator, Rejections) {
  EXPECT_THROW((void)coupled_oscillator_entropy({1.0, 1.0, 1.0}, 16), SectorError);
  EXPECT_THROW((void)coupled_oscillator_entropy({1.0, 1.0, -1.2}, 16), SectorError);
  EXPECT_THROW((void)gaussian_ground_state_entropy({1.0, 1.0, 1.0}), SectorError);
  EXPECT_THROW((void)coupled_oscillator_entropy({1.0, 1.0, 0.1}, 7), ArgumentError);
  EXPECT_THROW((void)coupled_oscillator_entropy({-1.0, 1.0, 0.1}, 16), ArgumentError);
}

}  // namespace
}  // namespace modent
