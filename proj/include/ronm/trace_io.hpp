#ifndef RONM_TRACE_IO_HPP
#define RONM_TRACE_IO_HPP

// Trace CSV and metadata JSON.
//
// CSV schema (version 1), one row per round, header first:
//   t, x_0 .. x_{d-1} (only when actions are logged), Y, Z, R_t,
//   regret_cumulative, dist_to_opt, mu_dist, lambda_min_precision,
//   lambda_max_precision, F_t, flags
// Floats use 17 significant digits; lines end in '\n'.

#include "ronm/core.hpp"
#include "ronm/schedule.hpp"
#include "ronm/solver.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ronm {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kVersionString = "ronm 0.1.0";

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::vector<std::string> trace_header(int logged_dim) {
  std::vector<std::string> h{"t"};
  for (int i = 0; i < logged_dim; ++i) h.push_back("x_" + std::to_string(i));
  for (const char* c : {"Y", "Z", "R_t", "regret_cumulative", "dist_to_opt", "mu_dist",
                        "lambda_min_precision", "lambda_max_precision", "F_t", "flags"})
    h.emplace_back(c);
  return h;
}

inline std::string trace_csv(const Trace& trace) {
  const int dx = trace.rows.empty() ? 0 : static_cast<int>(trace.rows.front().X.size());
  std::string out;
  const auto header = trace_header(dx);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const TraceRow& r : trace.rows) {
    out += std::to_string(r.t);
    for (int i = 0; i < dx; ++i) out += ',' + format_double(r.X(i));
    for (double v : {r.Y, r.Z, r.R, r.regret_cumulative, r.dist_to_opt, r.mu_dist,
                     r.lambda_min_precision, r.lambda_max_precision, r.F})
      out += ',' + format_double(v);
    out += ',' + std::to_string(r.flags);
    out += '\n';
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
  if (!f) throw ConfigError("write failed for " + path);
}

/// FNV-1a of a canonical text, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline nlohmann::ordered_json schedule_json(const ConstantSchedule& s) {
  nlohmann::ordered_json j;
  j["preset"] = s.preset;
  j["mode"] = s.mode == SolverMode::RONM ? "ronm" : "onm";
  j["regime"] = regime_name(s.regime);
  j["sigma"] = s.sigma;
  j["lambda"] = s.lambda;
  j["eta"] = s.eta;
  j["gamma"] = s.gamma;
  j["kappa"] = s.kappa;
  j["L"] = s.L;
  j["H"] = s.H;
  j["delta"] = s.delta;
  j["C"] = s.C;
  j["C_prime"] = s.C_prime;
  j["scale"] = {{"d", s.scale.d}, {"n", s.scale.n}, {"G", s.scale.G},
                {"r", s.scale.r}, {"R", s.scale.R}};
  return j;
}

inline nlohmann::ordered_json validation_json(const ValidationReport& rep) {
  nlohmann::ordered_json j;
  j["all_pass"] = rep.all_pass();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks)
    arr.push_back({{"name", c.name}, {"lhs", c.lhs}, {"relation", c.relation},
                   {"rhs", c.rhs}, {"pass", c.pass}});
  j["warnings"] = rep.failures();
  return j;
}

inline nlohmann::ordered_json trace_summary_json(const Trace& t) {
  nlohmann::ordered_json j;
  j["rounds"] = static_cast<long>(t.rows.size());
  j["completed"] = t.completed();
  if (t.abort_reason) j["abort_reason"] = *t.abort_reason;
  if (!t.rows.empty()) {
    const TraceRow& last = t.rows.back();
    j["final_regret"] = last.regret_cumulative;
    j["final_dist_to_opt"] = last.dist_to_opt;
    j["final_mu_dist"] = last.mu_dist;
    j["final_lambda_min_precision"] = last.lambda_min_precision;
  }
  j["pd_repairs"] = t.pd_repairs;
  j["first_repair_round"] = t.first_repair_round;
  j["ratio_clamps"] = t.ratio_clamps;
  j["first_F_violation"] = t.first_F_violation;
  j["sandwich_evaluated"] = t.sandwich_evaluated;
  j["first_sandwich_violation"] = t.first_sandwich_violation;
  j["env_queries"] = t.env_queries;
  return j;
}

// ------------------------------------------------------------- reading

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    std::string msg = "missing column '" + name + "'; available:";
    for (const auto& h : header) msg += " " + h;
    throw ConfigError(msg);
  }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(f, line)) throw ConfigError(path + ": empty file");
  t.header = split_csv_line(line);
  long lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != t.header.size())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(t.header.size()) + " fields, got " +
                        std::to_string(cells.size()));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

inline std::vector<double> read_trace_column(const std::string& path, const std::string& name) {
  const CsvTable t = read_csv(path);
  const int c = t.column(name);
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(t.rows[i][c], &used));
      if (used != t.rows[i][c].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError(path + ":" + std::to_string(i + 2) + ": column " + name +
                        " is not a number");
    }
  }
  return out;
}

}  // namespace ronm

#endif  // RONM_TRACE_IO_HPP
