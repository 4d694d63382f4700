#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gai/analysis.hpp"
#include "gai/core.hpp"
#include "gai/runner.hpp"
#include "gai/scenarios.hpp"
#include "gai/strategies.hpp"

namespace gai {

struct ExperimentConfig {
  Scenario scenario;
  Algorithm algorithm = Algorithm::Hdoc;
  double delta = 0.05;
  std::size_t runs = 1000;
  std::uint64_t base_seed = 0;
  std::uint64_t burn_in = 5;
  std::uint64_t budget = 100000;
  // A column renders as censored when more than this fraction of runs never
  // reached the event.
  double censor_report_threshold = 0.5;
  std::optional<std::size_t> stop_after_outputs;
  unsigned jobs = 1;

  void validate() const {
    if (runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    if (!(censor_report_threshold >= 0.0 && censor_report_threshold <= 1.0)) {
      throw std::invalid_argument("censor report threshold must lie in [0, 1]");
    }
  }

  RunOptions run_options() const { return {delta, burn_in, budget, stop_after_outputs}; }
};

// Mean and population standard deviation over the runs that reached the
// event; censored runs are only counted.
struct QuantityStats {
  std::string quantity;  // "tau_1", ..., "tau_stop"
  double mean = std::numeric_limits<double>::quiet_NaN();
  double std = std::numeric_limits<double>::quiet_NaN();
  std::size_t censored = 0;
  std::size_t runs = 0;
  bool reported = false;  // false renders as a dash
};

struct AggregateRow {
  std::string scenario;
  std::string algorithm;
  double delta = 0.0;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  std::vector<QuantityStats> taus;  // one per true good arm
  QuantityStats stop;
  std::size_t errors = 0;
  double error_rate = 0.0;

  // taus followed by stop.
  std::vector<QuantityStats> quantities() const {
    auto out = taus;
    out.push_back(stop);
    return out;
  }
};

// tau_lambda of one record; a run that stopped with fewer outputs has
// tau_lambda = tau_stop. Empty when the run was cut short first.
inline std::optional<std::uint64_t> tau_at(const RunRecord& rec, std::size_t lambda) {
  if (rec.tau.size() >= lambda) return rec.tau[lambda - 1];
  return rec.stop;
}

inline QuantityStats summarize(std::string quantity, const std::vector<std::optional<std::uint64_t>>& values,
                               double censor_report_threshold) {
  QuantityStats q;
  q.quantity = std::move(quantity);
  q.runs = values.size();
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& v : values) {
    if (!v) {
      ++q.censored;
      continue;
    }
    sum += static_cast<double>(*v);
    ++n;
  }
  if (n > 0) {
    q.mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& v : values) {
      if (v) ss += (static_cast<double>(*v) - q.mean) * (static_cast<double>(*v) - q.mean);
    }
    q.std = std::sqrt(ss / static_cast<double>(n));
  }
  const double censored_fraction = static_cast<double>(q.censored) / static_cast<double>(q.runs);
  q.reported = n > 0 && !(censored_fraction > censor_report_threshold);
  return q;
}

inline AggregateRow aggregate(const ExperimentConfig& cfg, const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("cannot aggregate zero runs");
  AggregateRow row;
  row.scenario = cfg.scenario.name();
  row.algorithm = std::string(to_string(cfg.algorithm));
  row.delta = cfg.delta;
  row.runs = records.size();
  row.seed = cfg.base_seed;
  const std::size_t m = cfg.scenario.good_count();
  std::vector<std::optional<std::uint64_t>> column(records.size());
  for (std::size_t lambda = 1; lambda <= m; ++lambda) {
    for (std::size_t r = 0; r < records.size(); ++r) column[r] = tau_at(records[r], lambda);
    row.taus.push_back(summarize("tau_" + std::to_string(lambda), column, cfg.censor_report_threshold));
  }
  for (std::size_t r = 0; r < records.size(); ++r) column[r] = records[r].stop;
  row.stop = summarize("tau_stop", column, cfg.censor_report_threshold);
  row.errors = static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const RunRecord& r) { return r.error(); }));
  row.error_rate = static_cast<double>(row.errors) / static_cast<double>(records.size());
  return row;
}

// Runs every replication; record i always uses RngStream(base_seed, i), so
// the result does not depend on the number of workers.
inline std::vector<RunRecord> run_replications(const ExperimentConfig& cfg,
                                               const std::function<void(std::size_t)>& on_progress = {}) {
  cfg.validate();
  const RunOptions opts = cfg.run_options();
  std::vector<RunRecord> records(cfg.runs);
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cfg.runs)));

  auto work = [&](unsigned w) {
    const AnyStrategy strategy = make_strategy(cfg.algorithm);
    for (std::size_t i = w; i < cfg.runs; i += workers) {
      RngStream rng(cfg.base_seed, i);
      records[i] = std::visit([&](const auto& s) { return run(cfg.scenario, s, opts, rng); }, strategy);
      if (w == 0 && on_progress) on_progress(i + 1);
    }
  };

  if (workers == 1) {
    work(0);
    return records;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        work(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

struct ExperimentResult {
  AggregateRow row;
  std::vector<RunRecord> records;
};

inline ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                       const std::function<void(std::size_t)>& on_progress = {}) {
  auto records = run_replications(cfg, on_progress);
  auto row = aggregate(cfg, records);
  return {std::move(row), std::move(records)};
}

// One line of the lower-bound comparison sweep.
struct SweepRow {
  double log_inv_delta;
  std::string algorithm;  // "hdoc", "lucb-g" or "lower-bound"
  std::size_t lambda;
  double mean;  // NaN when every run was cut short
  double std;
};

struct SweepConfig {
  Scenario scenario = builtin_scenarios().at("medical2");
  std::vector<Algorithm> algorithms{Algorithm::Hdoc, Algorithm::LucbG};
  std::vector<std::size_t> lambdas{1, 2};
  std::vector<double> log_inv_deltas{5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
  std::size_t runs = 1000;
  std::uint64_t base_seed = 0;
  std::uint64_t burn_in = 5;
  std::uint64_t budget = 100000;
  unsigned jobs = 1;
};

inline std::vector<double> default_log_inv_deltas() { return SweepConfig{}.log_inv_deltas; }

// Mean tau_lambda per algorithm against the Gaussian asymptotic lower bound,
// one grid point per log(1/delta). Runs stop once the largest requested
// lambda has been output.
inline std::vector<SweepRow> lower_bound_sweep(const SweepConfig& cfg,
                                           const std::function<void(double, Algorithm)>& on_point = {}) {
  if (cfg.lambdas.empty()) throw std::invalid_argument("sweep needs at least one lambda");
  const std::size_t max_lambda = *std::max_element(cfg.lambdas.begin(), cfg.lambdas.end());
  if (max_lambda < 1 || max_lambda > cfg.scenario.good_count()) {
    throw std::invalid_argument("sweep lambdas must lie in [1, m]");
  }
  std::vector<SweepRow> rows;
  for (double ell : cfg.log_inv_deltas) {
    if (!(ell > 0.0)) throw std::invalid_argument("log(1/delta) must be positive");
    const double delta = std::exp(-ell);
    for (Algorithm algo : cfg.algorithms) {
      if (on_point) on_point(ell, algo);
      ExperimentConfig ec{cfg.scenario, algo, delta, cfg.runs, cfg.base_seed, cfg.burn_in, cfg.budget,
                          1.0, max_lambda, cfg.jobs};
      const auto records = run_replications(ec);
      for (std::size_t lambda : cfg.lambdas) {
        std::vector<std::optional<std::uint64_t>> column;
        column.reserve(records.size());
        for (const auto& r : records) column.push_back(tau_at(r, lambda));
        const auto q = summarize("tau", column, 1.0);
        rows.push_back({ell, std::string(to_string(algo)), lambda, q.mean, q.std});
      }
    }
    const auto inst = analysis::Instance::from_scenario(cfg.scenario, delta);
    for (std::size_t lambda : cfg.lambdas) {
      rows.push_back({ell, "lower-bound", lambda, analysis::gaussian_lower_bound_curve(inst, lambda, ell), 0.0});
    }
  }
  return rows;
}

}  // namespace gai
