// Copyright 2026 The modent Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file report.hpp
 * @brief Run reports and their on-disk artifacts.
 *
 * Artifacts written into the output directory:
 *   report.json  the RunReport
 *   shots.csv    shot, a, b, outcome1, outcome2, product   (sampled runs)
 *   sweep.csv    parameter, value                          (scenarios with a sweep)
 *   plot.gp      gnuplot script for the CSVs              (--emit-gnuplot)
 *
 * Numbers are printed in shortest round-trip form, so identical runs give
 * byte-identical CSV files.
 */

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "modent/bell/chsh.hpp"
#include "modent/error.hpp"

namespace modent::cli {

struct StageEntropy {
  std::string stage;
  std::string bipartition;
  double bits{0.0};
};

struct SweepPoint {
  double parameter{0.0};
  double value{0.0};
};

struct RunReport {
  std::string scenario;
  std::string config_hash;
  std::vector<StageEntropy> stages;
  std::optional<ChshEstimate> chsh;
  bool sampled{false};
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::string sweep_parameter;
  std::vector<SweepPoint> sweep;
  double wall_seconds{0.0};
};

inline std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

inline nlohmann::ordered_json to_json(const ChshEstimate& e, bool sampled) {
  const auto& q = e.angles;
  nlohmann::ordered_json j;
  j["mode"] = sampled ? "sampled" : "exact";
  j["angles"] = {{"a", q.a}, {"a_prime", q.a_prime}, {"b", q.b}, {"b_prime", q.b_prime}};
  j["correlators"] = {{"E(a,b)", e.correlators[0]},
                      {"E(a,b')", e.correlators[1]},
                      {"E(a',b)", e.correlators[2]},
                      {"E(a',b')", e.correlators[3]}};
  j["S"] = e.s;
  j["standard_error"] = e.standard_error;
  j["shots"] = e.shots;
  return j;
}

inline nlohmann::ordered_json to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["config_hash"] = r.config_hash;
  j["stages"] = nlohmann::ordered_json::array();
  for (const auto& s : r.stages) {
    j["stages"].push_back({{"stage", s.stage}, {"bipartition", s.bipartition}, {"bits", s.bits}});
  }
  if (r.chsh) j["chsh"] = to_json(*r.chsh, r.sampled);
  j["details"] = r.details;
  if (!r.sweep.empty()) {
    nlohmann::ordered_json sw = nlohmann::ordered_json::array();
    for (const auto& p : r.sweep) sw.push_back({p.parameter, p.value});
    j["sweep"] = {{"parameter", r.sweep_parameter}, {"points", sw}};
  }
  j["wall_seconds"] = r.wall_seconds;
  return j;
}

inline std::string shots_csv(const std::vector<ShotRecord>& records) {
  std::string out = "shot,a,b,outcome1,outcome2,product\n";
  out.reserve(records.size() * 48);
  for (const auto& s : records) {
    out += std::to_string(s.shot);
    out += ',';
    out += format_number(s.a);
    out += ',';
    out += format_number(s.b);
    out += ',';
    out += std::to_string(s.outcome1);
    out += ',';
    out += std::to_string(s.outcome2);
    out += ',';
    out += std::to_string(s.product());
    out += '\n';
  }
  return out;
}

inline std::string sweep_csv(const std::vector<SweepPoint>& sweep) {
  std::string out = "parameter,value\n";
  for (const auto& p : sweep) out += format_number(p.parameter) + "," + format_number(p.value) + "\n";
  return out;
}

inline std::string gnuplot_script(const RunReport& r) {
  std::string g = "# gnuplot script for " + r.scenario + "\nset datafile separator ','\n";
  if (!r.sweep.empty()) {
    g += "set xlabel '" + r.sweep_parameter + "'\nset ylabel 'value'\nset grid\n";
    if (r.sweep_parameter == "mean_occupation") {
      g += "set logscale x 2\nset arrow from graph 0, first 2 to graph 1, first 2 nohead dt 2\n";
    }
    g += "plot 'sweep.csv' using 1:2 skip 1 with linespoints title '" +
         std::string(r.sweep_parameter == "mean_occupation" ? "S*" : "entropy (bits)") + "'\n";
  }
  if (r.chsh && !r.chsh->records.empty()) {
    if (!r.sweep.empty()) g += "pause -1\n";
    g += "set xlabel 'shot'\nset ylabel 'cumulative outcome product'\nunset logscale\n"
         "plot 'shots.csv' using 1:6 skip 1 smooth cumulative with lines title 'sum of products'\n";
  }
  return g;
}

namespace detail {

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  if (!f) throw ConfigError("out: cannot write '" + p.string() + "'");
}

}  // namespace detail

/// Writes all artifacts of `r` into `dir` (created if missing).
inline void write_artifacts(const RunReport& r, const std::string& dir, bool gnuplot) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("out: cannot create directory '" + dir + "': " + ec.message());
  const fs::path base(dir);
  detail::write_file(base / "report.json", to_json(r).dump(2) + "\n");
  if (r.chsh && !r.chsh->records.empty()) detail::write_file(base / "shots.csv", shots_csv(r.chsh->records));
  if (!r.sweep.empty()) detail::write_file(base / "sweep.csv", sweep_csv(r.sweep));
  if (gnuplot) detail::write_file(base / "plot.gp", gnuplot_script(r));
}

}  // namespace modent::cli
