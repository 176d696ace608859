// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file chsh.hpp
 * @brief Correlators and the CHSH statistic, exact and shot-sampled.
 *
 * S = E(a, b) + E(a, b') + E(a', b) - E(a', b') with +-1 outcomes.
 *
 * Exact mode evaluates E = Tr[rho (M1 (x) M2)] from the two-site reduced
 * state and the effective observables of both settings. Sampled mode draws
 * per-shot outcomes from the same joint distribution: site 1 from its
 * marginal, site 2 from the conditional given site 1 (sequential measurement
 * with collapse). Shot k of correlator c uses the counter streams
 * (c * shots + k, site), so results do not depend on the worker count.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "modent/bell/measurement.hpp"
#include "modent/bell/rng.hpp"
#include "modent/error.hpp"

namespace modent {

enum class EvalMode { exact, sampled };

struct ChshSetup {
  BellLayout layout;
  Capability capability{Capability::full};
  std::optional<ReservoirSpec> reference;

  [[nodiscard]] MeasurementSetting setting(SiteLabel site, double angle) const {
    return {site, angle, reference, capability};
  }
};

struct AngleQuad {
  double a{0.0};
  double a_prime{0.0};
  double b{0.0};
  double b_prime{0.0};
};

struct SamplingOptions {
  std::uint64_t shots{0};  ///< per correlator
  std::uint64_t seed{0};
  unsigned workers{1};
  bool keep_records{false};
};

struct ShotRecord {
  std::uint64_t shot{0};
  double a{0.0};
  double b{0.0};
  int outcome1{0};
  int outcome2{0};
  std::uint64_t seed{0};

  [[nodiscard]] int product() const noexcept { return outcome1 * outcome2; }
};

struct CorrelatorEstimate {
  double value{0.0};
  double standard_error{0.0};
  std::uint64_t shots{0};
};

struct ChshEstimate {
  AngleQuad angles;
  std::array<double, 4> correlators{};  ///< E(a,b), E(a,b'), E(a',b), E(a',b')
  double s{0.0};
  double standard_error{0.0};
  std::uint64_t shots{0};  ///< total over the four correlators
  std::vector<ShotRecord> records;
};

/// Outcome distribution of a pair of settings on a fixed two-site state.
struct JointDistribution {
  /// p[i][j]: probability of (outcome1, outcome2) = (i ? -1 : +1, j ? -1 : +1)
  std::array<std::array<double, 2>, 2> p{};

  [[nodiscard]] double correlator() const noexcept {
    return p[0][0] + p[1][1] - p[0][1] - p[1][0];
  }
  [[nodiscard]] double marginal_1_plus() const noexcept { return p[0][0] + p[0][1]; }
  [[nodiscard]] double marginal_2_plus() const noexcept { return p[0][0] + p[1][0]; }
};

/// Two-site reduced state with the exact-mode machinery on top.
class TwoSiteModel {
 public:
  TwoSiteModel(const PureState& state, ChshSetup setup)
      : setup_(std::move(setup)), rho_(site_pair_density(state, setup_.layout)) {}

  TwoSiteModel(const Eigen::Matrix4cd& rho, ChshSetup setup)
      : setup_(std::move(setup)), rho_(rho) {}

  [[nodiscard]] const ChshSetup& setup() const noexcept { return setup_; }
  [[nodiscard]] const Eigen::Matrix4cd& density() const noexcept { return rho_; }

  [[nodiscard]] Eigen::Matrix2cd observable(SiteLabel site, double angle) const {
    return effective_observable(setup_.setting(site, angle));
  }

  [[nodiscard]] double correlator(const Eigen::Matrix2cd& m1, const Eigen::Matrix2cd& m2) const {
    Eigen::Matrix4cd op;
    op << m1(0, 0) * m2, m1(0, 1) * m2, m1(1, 0) * m2, m1(1, 1) * m2;
    return (rho_ * op).trace().real();
  }

  [[nodiscard]] double correlator(double a, double b) const {
    return correlator(observable(SiteLabel::beam_1, a), observable(SiteLabel::beam_2, b));
  }

  [[nodiscard]] JointDistribution joint(double a, double b) const {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd m1 = observable(SiteLabel::beam_1, a);
    const Eigen::Matrix2cd m2 = observable(SiteLabel::beam_2, b);
    const std::array<Eigen::Matrix2cd, 2> e1{(id + m1) / 2.0, (id - m1) / 2.0};
    const std::array<Eigen::Matrix2cd, 2> e2{(id + m2) / 2.0, (id - m2) / 2.0};
    JointDistribution jd;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Eigen::Matrix4cd op;
        op << e1[i](0, 0) * e2[j], e1[i](0, 1) * e2[j], e1[i](1, 0) * e2[j], e1[i](1, 1) * e2[j];
        jd.p[i][j] = std::max((rho_ * op).trace().real(), 0.0);
      }
    }
    return jd;
  }

  [[nodiscard]] double chsh_value(const AngleQuad& q) const {
    const auto a = observable(SiteLabel::beam_1, q.a);
    const auto ap = observable(SiteLabel::beam_1, q.a_prime);
    const auto b = observable(SiteLabel::beam_2, q.b);
    const auto bp = observable(SiteLabel::beam_2, q.b_prime);
    return correlator(a, b) + correlator(a, bp) + correlator(ap, b) - correlator(ap, bp);
  }

 private:
  ChshSetup setup_;
  Eigen::Matrix4cd rho_;
};

namespace detail {

inline void require_shots(const SamplingOptions& opts) {
  if (opts.shots < 1) throw ArgumentError("sampled mode needs shots >= 1");
}

/// Sum of outcome products of shots [first_shot, first_shot + count).
inline std::int64_t sample_block(const JointDistribution& jd, const CounterRng& rng,
                                 std::uint64_t first_shot, std::uint64_t count, double a, double b,
                                 ShotRecord* records) {
  const double p1 = jd.marginal_1_plus();
  const double p2_given_plus = p1 > 0.0 ? jd.p[0][0] / p1 : 0.0;
  const double p2_given_minus = p1 < 1.0 ? jd.p[1][0] / (1.0 - p1) : 0.0;
  std::int64_t sum = 0;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t shot = first_shot + k;
    const int o1 = rng.uniform(shot, 0) < p1 ? +1 : -1;
    const double p2 = o1 == +1 ? p2_given_plus : p2_given_minus;
    const int o2 = rng.uniform(shot, 1) < p2 ? +1 : -1;
    sum += o1 * o2;
    if (records) records[k] = {shot, a, b, o1, o2, rng.seed()};
  }
  return sum;
}

}  // namespace detail

/// Sampled correlator; shot ids start at `first_shot`.
inline CorrelatorEstimate sample_correlator(const TwoSiteModel& model, double a, double b,
                                            const SamplingOptions& opts, std::uint64_t first_shot,
                                            std::vector<ShotRecord>* records) {
  detail::require_shots(opts);
  const JointDistribution jd = model.joint(a, b);
  const CounterRng rng(opts.seed);
  ShotRecord* out = nullptr;
  if (records) {
    const auto base = records->size();
    records->resize(base + opts.shots);
    out = records->data() + base;
  }
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, 64));
  std::vector<std::int64_t> partial(workers, 0);
  const std::uint64_t chunk = (opts.shots + workers - 1) / workers;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min<std::uint64_t>(opts.shots, w * chunk);
      const std::uint64_t hi = std::min<std::uint64_t>(opts.shots, lo + chunk);
      if (lo >= hi) continue;
      auto job = [&, w, lo, hi] {
        partial[w] = detail::sample_block(jd, rng, first_shot + lo, hi - lo, a, b,
                                          out ? out + lo : nullptr);
      };
      if (workers == 1) {
        job();
      } else {
        pool.emplace_back(job);
      }
    }
  }
  std::int64_t sum = 0;
  for (auto p : partial) sum += p;  // integer sum, exact
  const double n = static_cast<double>(opts.shots);
  const double e = static_cast<double>(sum) / n;
  return {e, std::sqrt(std::max(1.0 - e * e, 0.0) / n), opts.shots};
}

inline CorrelatorEstimate correlator(const PureState& state, const ChshSetup& setup, double a,
                                     double b, EvalMode mode, const SamplingOptions& opts = {}) {
  setup.setting(SiteLabel::beam_1, a).validate();
  setup.setting(SiteLabel::beam_2, b).validate();
  const TwoSiteModel model(state, setup);
  if (mode == EvalMode::exact) return {model.correlator(a, b), 0.0, 0};
  return sample_correlator(model, a, b, opts, 0, nullptr);
}

inline ChshEstimate chsh(const TwoSiteModel& model, const AngleQuad& q, EvalMode mode,
                         const SamplingOptions& opts = {}) {
  const auto& setup = model.setup();
  for (double a : {q.a, q.a_prime}) setup.setting(SiteLabel::beam_1, a).validate();
  for (double b : {q.b, q.b_prime}) setup.setting(SiteLabel::beam_2, b).validate();
  const std::array<std::pair<double, double>, 4> pairs{
      {{q.a, q.b}, {q.a, q.b_prime}, {q.a_prime, q.b}, {q.a_prime, q.b_prime}}};
  ChshEstimate est;
  est.angles = q;
  double var = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    const auto [a, b] = pairs[c];
    if (mode == EvalMode::exact) {
      est.correlators[c] = model.correlator(a, b);
    } else {
      const auto ce = sample_correlator(model, a, b, opts, c * opts.shots,
                                        opts.keep_records ? &est.records : nullptr);
      est.correlators[c] = ce.value;
      var += ce.standard_error * ce.standard_error;
      est.shots += ce.shots;
    }
  }
  const auto& e = est.correlators;
  est.s = e[0] + e[1] + e[2] - e[3];
  est.standard_error = std::sqrt(var);
  return est;
}

inline ChshEstimate chsh(const PureState& state, const ChshSetup& setup, const AngleQuad& q,
                         EvalMode mode, const SamplingOptions& opts = {}) {
  return chsh(TwoSiteModel(state, setup), q, mode, opts);
}

}  // namespace modent
