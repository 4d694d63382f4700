#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gai/harness.hpp"

namespace gai::csv {

inline constexpr std::string_view kResultHeader = "scenario,algorithm,delta,quantity,mean,std,censored,runs,seed";
inline constexpr std::string_view kSweepHeader = "log_inv_delta,algorithm,lambda,mean,std";

// Shortest decimal that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format number");
  return std::string(buf, end);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("bad number in CSV: " + std::string(s));
  return v;
}

inline std::uint64_t parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("bad integer in CSV: " + std::string(s));
  return v;
}

// RFC 4180 quoting; only needed for scenario names loaded from files.
inline std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

// One row per (scenario, algorithm, quantity) in input order, taus before
// tau_stop. Censored columns leave mean and std empty.
inline void emit_csv(const std::vector<AggregateRow>& rows, std::ostream& out) {
  if (rows.empty()) throw std::invalid_argument("emit_csv needs at least one row");
  out << kResultHeader << '\n';
  for (const auto& row : rows) {
    for (const auto& q : row.quantities()) {
      out << escape(row.scenario) << ',' << escape(row.algorithm) << ',' << format_double(row.delta) << ','
          << q.quantity << ',';
      if (q.reported) out << format_double(q.mean) << ',' << format_double(q.std);
      else out << ',';
      out << ',' << q.censored << ',' << row.runs << ',' << row.seed << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed writing CSV output");
}

struct ResultRecord {
  std::string scenario;
  std::string algorithm;
  double delta = 0.0;
  std::string quantity;
  std::optional<double> mean;
  std::optional<double> std;
  std::size_t censored = 0;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
};

inline std::vector<ResultRecord> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split_line(line).size() != 9 || line.rfind(kResultHeader, 0) != 0) {
    throw std::invalid_argument("missing or unexpected CSV header");
  }
  std::vector<ResultRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 9) throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields, expected 9");
    ResultRecord r;
    r.scenario = f[0];
    r.algorithm = f[1];
    r.delta = parse_double(f[2]);
    r.quantity = f[3];
    if (!f[4].empty()) r.mean = parse_double(f[4]);
    if (!f[5].empty()) r.std = parse_double(f[5]);
    r.censored = static_cast<std::size_t>(parse_uint(f[6]));
    r.runs = static_cast<std::size_t>(parse_uint(f[7]));
    r.seed = parse_uint(f[8]);
    out.push_back(std::move(r));
  }
  return out;
}

inline void emit_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.log_inv_delta) << ',' << r.algorithm << ',' << r.lambda << ',';
    if (std::isfinite(r.mean)) out << format_double(r.mean) << ',' << format_double(r.std);
    else out << ',';
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing CSV output");
}

}  // namespace gai::csv
