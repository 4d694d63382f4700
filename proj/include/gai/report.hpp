#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "gai/analysis.hpp"
#include "gai/harness.hpp"

namespace gai::report {

inline constexpr const char* kDash = "–";

inline std::string fixed(double v, int digits = 1) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string cell(const QuantityStats& q) {
  if (!q.reported) return kDash;
  return fixed(q.mean) + " +- " + fixed(q.std);
}

// Human-readable table: one line per quantity with mean +- std (or a dash),
// the censored count and the error rate of the row.
inline void print_table(const std::vector<AggregateRow>& rows, std::ostream& out) {
  for (const auto& row : rows) {
    out << row.scenario << " / " << row.algorithm << "  (delta=" << row.delta << ", runs=" << row.runs
        << ", seed=" << row.seed << ")\n";
    for (const auto& q : row.quantities()) {
      std::string label = q.quantity;
      label.resize(10, ' ');
      out << "  " << label << cell(q) << "   [censored " << q.censored << "/" << q.runs << "]\n";
    }
    out << "  error rate " << fixed(row.error_rate, 4) << " (" << row.errors << "/" << row.runs << ")\n";
  }
}

inline std::string maybe(const std::optional<double>& v, int digits = 4) {
  return v ? fixed(*v, digits) : std::string("unbounded");
}

inline void print_bounds(const analysis::Instance& inst, const analysis::BoundReport& r, std::ostream& out) {
  out << "K=" << inst.num_arms() << " m=" << inst.good_count() << " delta=" << inst.delta()
      << " lambda=" << r.lambda << " epsilon=" << fixed(r.epsilon, 6) << "\n";
  out << "lower bound on E[tau_l] (raw / clamped):\n";
  for (std::size_t l = 0; l < r.lower_tau.size(); ++l) {
    const auto& lb = r.lower_tau[l];
    out << "  l=" << l + 1 << "  " << (std::isfinite(lb.raw) ? fixed(lb.raw, 4) : std::string("-inf")) << " / "
        << fixed(lb.clamped, 4) << "\n";
  }
  out << "asymptotic coefficient of log(1/delta):\n";
  for (std::size_t l = 0; l < r.asymptotic_coeff.size(); ++l) {
    out << "  tau_" << l + 1 << "  " << maybe(r.asymptotic_coeff[l]) << "\n";
  }
  out << "  tau_stop  " << maybe(r.asymptotic_coeff_stop) << "\n";
  out << "n_i (arms by decreasing mean):\n ";
  for (const auto& n : r.n_terms) out << ' ' << maybe(n, 2);
  out << "\n";
  out << "upper bound on E[tau_" << r.lambda << "]: " << maybe(r.upper_tau_lambda, 2) << "\n";
  out << "upper bound on E[tau_stop]: " << maybe(r.upper_tau_stop, 2) << "\n";
  for (const auto& note : r.notes) out << "note: " << note << "\n";
}

}  // namespace gai::report
