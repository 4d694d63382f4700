#pragma once

// Command-line front end: `gai simulate`, `gai sweep` and `gai bounds`.
// Exit codes: 0 success, 1 runtime failure, 2 bad invocation.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gai/analysis.hpp"
#include "gai/csv.hpp"
#include "gai/harness.hpp"
#include "gai/report.hpp"
#include "gai/scenarios.hpp"
#include "gai/strategies.hpp"

namespace gai::cli {

inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;
inline constexpr int kUsageError = 2;

// Invocation problem detected after flag parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("GAI_SEED"); env && *env) {
    try {
      return static_cast<std::uint64_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw UsageError(std::string("GAI_SEED is not an unsigned integer: ") + env);
    }
  }
  return 0;
}

// "5:50:5" (inclusive range), "5,10,20" or a single value.
inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto to_num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad number in grid '" + text + "': " + s);
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("grid range must be start:stop:step");
    const double start = to_num(parts[0]), stop = to_num(parts[1]), step = to_num(parts[2]);
    if (!(step > 0.0) || stop < start) throw UsageError("grid range needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(to_num(p));
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

// Writes to `out` for "-" and to a file otherwise.
template <typename Fn>
void with_output(const std::string& dest, std::ostream& out, Fn&& write) {
  if (dest == "-") {
    write(out);
    return;
  }
  std::ofstream file(dest);
  if (!file) throw std::runtime_error("cannot open output file " + dest);
  write(file);
}

inline Scenario scenario_arg(const std::string& name) {
  try {
    return resolve_scenario(name);
  } catch (const UnknownScenario& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

struct DeltaArgs {
  double delta = 0.05;
  double log_inv_delta = 0.0;

  void add_to(CLI::App* cmd) {
    auto* d = cmd->add_option("--delta", delta, "acceptance error rate in (0,1)")->capture_default_str();
    auto* l = cmd->add_option("--log-inv-delta", log_inv_delta, "alternative to --delta: log(1/delta) > 0");
    d->excludes(l);
    l->excludes(d);
    log_opt = l;
  }

  double resolve() const {
    const double v = log_opt && log_opt->count() > 0 ? std::exp(-log_inv_delta) : delta;
    if (log_opt && log_opt->count() > 0 && !(log_inv_delta > 0.0)) throw UsageError("--log-inv-delta must be positive");
    if (!(v > 0.0 && v < 1.0)) throw UsageError("--delta must lie in (0, 1)");
    return v;
  }

  CLI::Option* log_opt = nullptr;
};

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Good arm identification: simulation, lower-bound sweeps and sample-complexity bounds", "gai"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run replications of one algorithm on one scenario");
  std::string sim_scenario, sim_algo, sim_out = "-", sim_format = "table";
  DeltaArgs sim_delta;
  std::size_t sim_runs = 1000;
  std::uint64_t sim_seed = 0, sim_burn = 5, sim_budget = 100000;
  unsigned sim_jobs = 1;
  double sim_censor = 0.5;
  bool sim_quiet = false;
  sim->add_option("--scenario", sim_scenario, "built-in scenario name or path to a scenario JSON file")->required();
  sim->add_option("--algo", sim_algo, "sampling strategy")->required()->check(CLI::IsMember({"hdoc", "lucb-g", "apt-g"}));
  sim_delta.add_to(sim);
  sim->add_option("--runs", sim_runs, "independent replications")->capture_default_str()->check(CLI::PositiveNumber);
  auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "base seed (default: $GAI_SEED or 0)");
  sim->add_option("--burn-in", sim_burn, "forced pulls per arm before adaptive sampling")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--budget", sim_budget, "pull budget per replication")->capture_default_str();
  sim->add_option("--out", sim_out, "output path, '-' for standard output")->capture_default_str();
  sim->add_option("--format", sim_format, "output format")->capture_default_str()->check(CLI::IsMember({"table", "csv"}));
  sim->add_option("--jobs", sim_jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--censor-threshold", sim_censor, "censored fraction above which a column renders as a dash")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  sim->add_flag("--quiet", sim_quiet, "no progress output");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "mean tau_lambda against the Gaussian asymptotic lower bound over log(1/delta)");
  std::string sw_scenario = "medical2", sw_lambdas = "1,2", sw_grid = "5:50:5", sw_out = "-";
  std::vector<std::string> sw_algos{"hdoc", "lucb-g"};
  std::size_t sw_runs = 1000;
  std::uint64_t sw_seed = 0, sw_burn = 5, sw_budget = 100000;
  unsigned sw_jobs = 1;
  bool sw_quiet = false;
  sweep->add_option("--scenario", sw_scenario, "gaussian scenario name or file")->capture_default_str();
  sweep->add_option("--algos", sw_algos, "sampling strategies")
      ->delimiter(',')
      ->capture_default_str()
      ->check(CLI::IsMember({"hdoc", "lucb-g", "apt-g"}));
  sweep->add_option("--lambdas", sw_lambdas, "comma-separated lambda values")->capture_default_str();
  sweep->add_option("--log-inv-delta", sw_grid, "grid: start:stop:step, a list or one value")->capture_default_str();
  sweep->add_option("--runs", sw_runs, "replications per grid point")->capture_default_str()->check(CLI::PositiveNumber);
  auto* sw_seed_opt = sweep->add_option("--seed", sw_seed, "base seed (default: $GAI_SEED or 0)");
  sweep->add_option("--burn-in", sw_burn, "forced pulls per arm")->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--budget", sw_budget, "pull budget per replication")->capture_default_str();
  sweep->add_option("--out", sw_out, "output path, '-' for standard output")->capture_default_str();
  sweep->add_option("--jobs", sw_jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_flag("--quiet", sw_quiet, "no progress output");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "closed-form lower/upper sample-complexity bounds");
  std::string b_scenario;
  DeltaArgs b_delta;
  std::size_t b_lambda = 1;
  double b_epsilon = 0.0;
  bounds->add_option("--scenario", b_scenario, "built-in scenario name or path")->required();
  b_delta.add_to(bounds);
  bounds->add_option("--lambda", b_lambda, "number of good arms to identify")->capture_default_str()->check(CLI::PositiveNumber);
  auto* b_eps_opt = bounds->add_option("--epsilon", b_epsilon, "slack of the upper bound (default: half the instance separation)");

  std::vector<const char*> argv;
  argv.push_back("gai");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (sim->parsed()) {
      ExperimentConfig cfg{scenario_arg(sim_scenario), parse_algorithm(sim_algo), sim_delta.resolve(), sim_runs,
                           sim_seed_opt->count() ? sim_seed : default_seed(), sim_burn, sim_budget, sim_censor,
                           std::nullopt, sim_jobs};
      if (cfg.budget < cfg.scenario.num_arms() * cfg.burn_in) throw UsageError("--budget must cover the burn-in pulls");
      std::size_t last_decile = 0;
      auto progress = [&](std::size_t done) {
        const std::size_t decile = done * 10 / cfg.runs;
        if (!sim_quiet && decile > last_decile) {
          last_decile = decile;
          err << "simulate: " << done << "/" << cfg.runs << " runs\n";
        }
      };
      const auto result = run_experiment(cfg, progress);
      with_output(sim_out, out, [&](std::ostream& os) {
        if (sim_format == "csv") csv::emit_csv({result.row}, os);
        else report::print_table({result.row}, os);
      });
      return kOk;
    }

    if (sweep->parsed()) {
      SweepConfig cfg{scenario_arg(sw_scenario)};
      cfg.algorithms.clear();
      for (const auto& a : sw_algos) cfg.algorithms.push_back(parse_algorithm(a));
      cfg.lambdas.clear();
      for (double l : parse_grid(sw_lambdas)) {
        if (!(l >= 1.0) || l != std::floor(l)) throw UsageError("--lambdas must be positive integers");
        cfg.lambdas.push_back(static_cast<std::size_t>(l));
      }
      cfg.log_inv_deltas = parse_grid(sw_grid);
      cfg.runs = sw_runs;
      cfg.base_seed = sw_seed_opt->count() ? sw_seed : default_seed();
      cfg.burn_in = sw_burn;
      cfg.budget = sw_budget;
      cfg.jobs = sw_jobs;
      if (cfg.scenario.noise().kind != RewardKind::Gaussian) throw UsageError("sweep needs a gaussian scenario");
      for (auto l : cfg.lambdas) {
        if (l > cfg.scenario.good_count()) throw UsageError("--lambdas exceed the number of good arms");
      }
      for (double ell : cfg.log_inv_deltas) {
        if (!(ell > 0.0)) throw UsageError("--log-inv-delta values must be positive");
      }
      if (cfg.budget < cfg.scenario.num_arms() * cfg.burn_in) throw UsageError("--budget must cover the burn-in pulls");
      auto on_point = [&](double ell, Algorithm algo) {
        if (!sw_quiet) err << "sweep: log(1/delta)=" << ell << " " << to_string(algo) << "\n";
      };
      const auto rows = lower_bound_sweep(cfg, on_point);
      with_output(sw_out, out, [&](std::ostream& os) { csv::emit_sweep_csv(rows, os); });
      return kOk;
    }

    if (bounds->parsed()) {
      const Scenario s = scenario_arg(b_scenario);
      const auto inst = analysis::Instance::from_scenario(s, b_delta.resolve());
      if (b_lambda > inst.good_count()) {
        throw UsageError("--lambda must not exceed the number of good arms (" + std::to_string(inst.good_count()) + ")");
      }
      std::optional<double> eps;
      if (b_eps_opt->count()) {
        eps = b_epsilon;
        // An explicit epsilon must satisfy the upper-bound hypotheses.
        try {
          analysis::upper_tau_lambda(inst, b_lambda, b_epsilon);
        } catch (const analysis::HypothesisError& e) {
          err << "gai bounds: hypothesis violated: " << e.what() << "\n";
          return kUsageError;
        }
      }
      const auto report = analysis::make_bound_report(inst, b_lambda, eps);
      out << "scenario " << s.name() << "\n";
      report::print_bounds(inst, report, out);
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "gai: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "gai: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace gai::cli
