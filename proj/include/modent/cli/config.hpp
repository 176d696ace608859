// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file config.hpp
 * @brief Experiment configuration: JSON in, JSON out, with explicit defaults.
 *
 * Reading is strict. Unknown keys and wrong types are ConfigErrors naming
 * the offending field path, so a typo never silently falls back to a default.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "modent/bell/chsh.hpp"
#include "modent/bell/measurement.hpp"
#include "modent/couplers/reservoir.hpp"
#include "modent/error.hpp"

namespace modent::cli {

using Json = nlohmann::json;

enum class Scenario { photon, atom, tps_demo, oscillator_demo };

constexpr std::string_view to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::photon: return "photon";
    case Scenario::atom: return "atom";
    case Scenario::tps_demo: return "tps-demo";
    case Scenario::oscillator_demo: return "oscillator-demo";
  }
  return "unknown";
}

inline Scenario parse_scenario(std::string_view s) {
  for (auto v : {Scenario::photon, Scenario::atom, Scenario::tps_demo, Scenario::oscillator_demo}) {
    if (s == to_string(v)) return v;
  }
  throw ConfigError("scenario: unknown value '" + std::string(s) +
                    "' (expected photon, atom, tps-demo or oscillator-demo)");
}

struct ReservoirConfig {
  double mean_occupation{32.0};
  ReservoirKind kind{ReservoirKind::coherent};
  std::optional<int> cutoff;  ///< nullopt: max(64, smallest valid cutoff)
  RabiScaling scaling{RabiScaling::sqrt_occupation};
  std::vector<double> sweep{1.0, 2.0, 4.0, 8.0, 16.0, 32.0};

  [[nodiscard]] ReservoirSpec spec(double nbar) const {
    const int c = cutoff ? *cutoff : std::max(64, ReservoirSpec::minimum_cutoff(nbar));
    return {nbar, c, kind, scaling};
  }
};

struct AnglesConfig {
  bool optimized{true};
  AngleQuad quadruple{0.0, std::numbers::pi / 4.0, std::numbers::pi / 8.0,
                      3.0 * std::numbers::pi / 8.0};
};

struct TpsConfig {
  int dimension{6};
  int left{2};
  int right{3};
  int random_states{20};
};

struct OscillatorConfig {
  double mass{1.0};
  double omega{1.0};
  double coupling_ratio{0.5};  ///< kappa / (m w^2)
  int cutoff{24};
  std::vector<double> sweep{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
};

struct ExperimentConfig {
  Scenario scenario{Scenario::photon};
  std::uint64_t shots{100000};
  std::uint64_t seed{1};
  bool exact{false};
  unsigned workers{1};
  Capability capability{Capability::full};
  bool reference{true};  ///< atom scenario: measure through reservoir traps
  double stark_phase{0.0};
  double beam_splitter_theta{std::numbers::pi / 4.0};
  ReservoirConfig reservoir;
  AnglesConfig angles;
  TpsConfig tps;
  OscillatorConfig oscillator;
  std::string out;  ///< output directory; empty: report to stdout only
  bool emit_gnuplot{false};

  static ExperimentConfig defaults(Scenario s) {
    ExperimentConfig c;
    c.scenario = s;
    if (s == Scenario::atom) c.capability = Capability::superselected;
    return c;
  }

  void validate() const;
};

namespace detail {

inline std::string_view kind_name(ReservoirKind k) {
  return k == ReservoirKind::fock ? "fock" : "coherent";
}
inline std::string_view scaling_name(RabiScaling s) {
  return s == RabiScaling::constant ? "constant" : "sqrt";
}

/// Strict field reader over one JSON object.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where("") + "expected an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.emplace_back(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const Json::exception&) {
      throw ConfigError(where(key) + "wrong type (" + std::string(it->type_name()) + ")");
    }
  }

  [[nodiscard]] const Json* child(const char* key) {
    seen_.emplace_back(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  [[nodiscard]] std::string where(std::string_view key) const {
    std::string p = path_;
    if (!key.empty()) p += p.empty() ? std::string(key) : "." + std::string(key);
    return p.empty() ? std::string() : p + ": ";
  }

  void reject_unknown() const {
    for (const auto& [k, v] : j_.items()) {
      bool known = false;
      for (const auto& s : seen_) known = known || s == k;
      if (!known) throw ConfigError(where(k) + "unknown field");
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::vector<std::string> seen_;
};

inline double finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw ConfigError(field + ": must be finite");
  return v;
}

}  // namespace detail

/// Applies the keys present in `j` on top of `c`.
inline void merge(ExperimentConfig& c, const Json& j) {
  detail::Reader r(j, "");
  std::string scenario{to_string(c.scenario)};
  r.get("scenario", scenario);
  if (parse_scenario(scenario) != c.scenario) {
    throw ConfigError("scenario: config is for '" + scenario + "' but the '" +
                      std::string(to_string(c.scenario)) + "' command was run");
  }
  r.get("shots", c.shots);
  r.get("seed", c.seed);
  r.get("exact", c.exact);
  r.get("workers", c.workers);
  std::string cap{to_string(c.capability)};
  r.get("capability", cap);
  if (cap == "full") {
    c.capability = Capability::full;
  } else if (cap == "superselected") {
    c.capability = Capability::superselected;
  } else {
    throw ConfigError("capability: expected full or superselected, got '" + cap + "'");
  }
  r.get("reference", c.reference);
  r.get("stark_phase", c.stark_phase);
  r.get("beam_splitter_theta", c.beam_splitter_theta);
  r.get("out", c.out);
  r.get("emit_gnuplot", c.emit_gnuplot);

  if (const Json* res = r.child("reservoir")) {
    detail::Reader rr(*res, "reservoir");
    rr.get("mean_occupation", c.reservoir.mean_occupation);
    std::string kind{detail::kind_name(c.reservoir.kind)};
    rr.get("kind", kind);
    if (kind == "coherent") {
      c.reservoir.kind = ReservoirKind::coherent;
    } else if (kind == "fock") {
      c.reservoir.kind = ReservoirKind::fock;
    } else {
      throw ConfigError("reservoir.kind: expected coherent or fock, got '" + kind + "'");
    }
    if (const Json* cut = rr.child("cutoff")) {
      if (cut->is_string() && cut->get<std::string>() == "auto") {
        c.reservoir.cutoff.reset();
      } else if (cut->is_number_integer()) {
        c.reservoir.cutoff = cut->get<int>();
      } else {
        throw ConfigError("reservoir.cutoff: expected an integer or \"auto\"");
      }
    }
    std::string scaling{detail::scaling_name(c.reservoir.scaling)};
    rr.get("scaling", scaling);
    if (scaling == "sqrt") {
      c.reservoir.scaling = RabiScaling::sqrt_occupation;
    } else if (scaling == "constant") {
      c.reservoir.scaling = RabiScaling::constant;
    } else {
      throw ConfigError("reservoir.scaling: expected sqrt or constant, got '" + scaling + "'");
    }
    rr.get("sweep", c.reservoir.sweep);
    rr.reject_unknown();
  }

  if (const Json* ang = r.child("angles")) {
    detail::Reader ra(*ang, "angles");
    std::string source = c.angles.optimized ? "optimized" : "explicit";
    ra.get("source", source);
    if (source == "optimized") {
      c.angles.optimized = true;
    } else if (source == "explicit") {
      c.angles.optimized = false;
    } else {
      throw ConfigError("angles.source: expected optimized or explicit, got '" + source + "'");
    }
    std::array<double, 4> q{c.angles.quadruple.a, c.angles.quadruple.a_prime,
                            c.angles.quadruple.b, c.angles.quadruple.b_prime};
    ra.get("quadruple", q);
    c.angles.quadruple = {q[0], q[1], q[2], q[3]};
    ra.reject_unknown();
  }

  if (const Json* t = r.child("tps")) {
    detail::Reader rt(*t, "tps");
    rt.get("dimension", c.tps.dimension);
    rt.get("left", c.tps.left);
    rt.get("right", c.tps.right);
    rt.get("random_states", c.tps.random_states);
    rt.reject_unknown();
  }

  if (const Json* o = r.child("oscillator")) {
    detail::Reader ro(*o, "oscillator");
    ro.get("mass", c.oscillator.mass);
    ro.get("omega", c.oscillator.omega);
    ro.get("coupling_ratio", c.oscillator.coupling_ratio);
    ro.get("cutoff", c.oscillator.cutoff);
    ro.get("sweep", c.oscillator.sweep);
    ro.reject_unknown();
  }
  r.reject_unknown();
}

inline void ExperimentConfig::validate() const {
  if (shots < 1) throw ConfigError("shots: must be >= 1");
  if (workers < 1 || workers > 64) throw ConfigError("workers: must lie in [1, 64]");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!(detail::finite(stark_phase, "stark_phase") >= 0.0 && stark_phase < two_pi)) {
    throw ConfigError("stark_phase: must lie in [0, 2 pi)");
  }
  if (!(detail::finite(beam_splitter_theta, "beam_splitter_theta") >= 0.0 &&
        beam_splitter_theta < two_pi)) {
    throw ConfigError("beam_splitter_theta: must lie in [0, 2 pi)");
  }
  const auto& q = angles.quadruple;
  for (double a : {q.a, q.a_prime, q.b, q.b_prime}) detail::finite(a, "angles.quadruple");
  if (scenario == Scenario::atom) {
    if (!(detail::finite(reservoir.mean_occupation, "reservoir.mean_occupation") >= 0.0)) {
      throw ConfigError("reservoir.mean_occupation: must be >= 0");
    }
    if (reservoir.cutoff && *reservoir.cutoff < 1) {
      throw ConfigError("reservoir.cutoff: must be >= 1");
    }
    for (double n : reservoir.sweep) {
      if (!(detail::finite(n, "reservoir.sweep") >= 0.0)) {
        throw ConfigError("reservoir.sweep: occupations must be >= 0");
      }
    }
  }
  if (scenario == Scenario::tps_demo) {
    if (tps.dimension < 2) throw ConfigError("tps.dimension: must be >= 2");
    if (tps.random_states < 0) throw ConfigError("tps.random_states: must be >= 0");
    if (tps.dimension > 4096) throw ConfigError("tps.dimension: at most 4096");
  }
  if (scenario == Scenario::oscillator_demo) {
    if (!(detail::finite(oscillator.mass, "oscillator.mass") > 0.0)) {
      throw ConfigError("oscillator.mass: must be > 0");
    }
    if (!(detail::finite(oscillator.omega, "oscillator.omega") > 0.0)) {
      throw ConfigError("oscillator.omega: must be > 0");
    }
    detail::finite(oscillator.coupling_ratio, "oscillator.coupling_ratio");
    for (double x : oscillator.sweep) detail::finite(x, "oscillator.sweep");
    if (oscillator.cutoff < 8 || oscillator.cutoff > 96) {
      throw ConfigError("oscillator.cutoff: must lie in [8, 96]");
    }
  }
}

/// Every field, defaults included. Output-only keys are kept; hashing drops
/// them.
inline Json to_json(const ExperimentConfig& c) {
  Json j;
  j["scenario"] = to_string(c.scenario);
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  j["exact"] = c.exact;
  j["workers"] = c.workers;
  j["capability"] = to_string(c.capability);
  j["reference"] = c.reference;
  j["stark_phase"] = c.stark_phase;
  j["beam_splitter_theta"] = c.beam_splitter_theta;
  j["reservoir"] = {{"mean_occupation", c.reservoir.mean_occupation},
                    {"kind", detail::kind_name(c.reservoir.kind)},
                    {"scaling", detail::scaling_name(c.reservoir.scaling)},
                    {"sweep", c.reservoir.sweep}};
  if (c.reservoir.cutoff) {
    j["reservoir"]["cutoff"] = *c.reservoir.cutoff;
  } else {
    j["reservoir"]["cutoff"] = "auto";
  }
  const auto& q = c.angles.quadruple;
  j["angles"] = {{"source", c.angles.optimized ? "optimized" : "explicit"},
                 {"quadruple", {q.a, q.a_prime, q.b, q.b_prime}}};
  j["tps"] = {{"dimension", c.tps.dimension},
              {"left", c.tps.left},
              {"right", c.tps.right},
              {"random_states", c.tps.random_states}};
  j["oscillator"] = {{"mass", c.oscillator.mass},
                     {"omega", c.oscillator.omega},
                     {"coupling_ratio", c.oscillator.coupling_ratio},
                     {"cutoff", c.oscillator.cutoff},
                     {"sweep", c.oscillator.sweep}};
  j["out"] = c.out;
  j["emit_gnuplot"] = c.emit_gnuplot;
  return j;
}

/// FNV-1a (64 bit) of the canonical dump without output-only fields. The
/// worker count is excluded too: results do not depend on it.
inline std::string config_hash(const ExperimentConfig& c) {
  Json j = to_json(c);
  j.erase("out");
  j.erase("emit_gnuplot");
  j.erase("workers");
  const std::string text = j.dump();  // object keys are sorted
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k, h >>= 4) out[static_cast<std::size_t>(k)] = digits[h & 0xf];
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace modent::cli
