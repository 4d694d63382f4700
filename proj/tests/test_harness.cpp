#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gai/csv.hpp"
#include "gai/harness.hpp"
#include "gai/report.hpp"
#include "gai/scenarios.hpp"

#include "gtest/gtest.h"

namespace {

using gai::Algorithm;
using gai::ExperimentConfig;
using gai::RunRecord;

ExperimentConfig config(const std::string& scenario, Algorithm algo, std::size_t runs) {
  return ExperimentConfig{gai::builtin_scenarios().at(scenario), algo, 0.05, runs, 11, 5, 100000, 0.5, {}, 1};
}

TEST(ScenarioRegistryTest, Builtins) {
  const auto& reg = gai::builtin_scenarios();
  ASSERT_EQ(reg.size(), 5u);
  const auto& t1 = reg.at("threshold1");
  EXPECT_EQ(t1.means(), (std::vector<double>{0.1, 0.1, 0.1, 0.35, 0.45, 0.55, 0.65, 0.9, 0.9, 0.9}));
  EXPECT_EQ(t1.threshold(), 0.5);
  EXPECT_EQ(t1.good_count(), 5u);
  const auto& t2 = reg.at("threshold2");
  EXPECT_EQ(t2.num_arms(), 6u);
  EXPECT_EQ(t2.good_count(), 3u);
  EXPECT_EQ(reg.at("threshold3").good_count(), 3u);
  const auto& m1 = reg.at("medical1");
  EXPECT_EQ(m1.means(), (std::vector<double>{0.36, 0.34, 0.469, 0.465, 0.537}));
  EXPECT_EQ(m1.good_count(), 1u);
  const auto& m2 = reg.at("medical2");
  EXPECT_EQ(m2.means(), (std::vector<double>{0.5, 0.7, 1.6, 1.8, 1.2, 1.0, 0.6}));
  EXPECT_EQ(m2.noise().kind, gai::RewardKind::Gaussian);
  EXPECT_EQ(m2.noise().variance, 1.44);
  EXPECT_EQ(m2.threshold(), 1.2);
  EXPECT_EQ(m2.good_count(), 3u);
}

TEST(ScenarioJsonTest, RoundTripAndErrors) {
  for (const auto& [name, s] : gai::builtin_scenarios()) {
    const auto back = gai::scenario_from_json(gai::scenario_to_json(s));
    EXPECT_EQ(back.name(), name);
    EXPECT_EQ(back.means(), s.means());
    EXPECT_EQ(back.threshold(), s.threshold());
    EXPECT_EQ(back.noise().kind, s.noise().kind);
  }
  EXPECT_THROW(gai::scenario_from_json(nlohmann::json::parse(R"({"name":"x","kind":"gaussian","means":[1],"threshold":0.5})")),
               std::invalid_argument);
  EXPECT_THROW(gai::scenario_from_json(nlohmann::json::parse(R"({"name":"x","kind":"poisson","means":[1],"threshold":0.5})")),
               std::invalid_argument);
  EXPECT_THROW(gai::scenario_from_json(nlohmann::json::parse(R"({"name":"x","kind":"bernoulli","threshold":0.5})")),
               std::invalid_argument);
}

TEST(ScenarioJsonTest, FileOverridesBuiltin) {
  const auto path = std::filesystem::temp_directory_path() / "gai_test_threshold1";
  {
    std::ofstream out(path);
    out << R"({"name": "custom", "kind": "bernoulli", "means": [0.2, 0.8], "threshold": 0.6})";
  }
  const auto s = gai::resolve_scenario(path.string());
  EXPECT_EQ(s.name(), "custom");
  EXPECT_EQ(s.num_arms(), 2u);
  std::filesystem::remove(path);
  EXPECT_EQ(gai::resolve_scenario("threshold1").num_arms(), 10u);
  EXPECT_THROW(gai::resolve_scenario("nosuch"), gai::UnknownScenario);
}

TEST(AggregateTest, SingleRun) {
  auto cfg = config("threshold2", Algorithm::Hdoc, 1);
  const auto res = gai::run_experiment(cfg);
  ASSERT_EQ(res.records.size(), 1u);
  const auto& rec = res.records[0];
  ASSERT_EQ(res.row.taus.size(), 3u);
  for (std::size_t l = 1; l <= 3; ++l) {
    const auto& q = res.row.taus[l - 1];
    EXPECT_EQ(q.mean, static_cast<double>(*gai::tau_at(rec, l)));
    EXPECT_EQ(q.std, 0.0);
  }
  EXPECT_EQ(res.row.stop.mean, static_cast<double>(*rec.stop));
}

TEST(AggregateTest, CensoringRules) {
  ExperimentConfig cfg = config("threshold2", Algorithm::Hdoc, 4);
  std::vector<RunRecord> recs(4);
  recs[0].tau = {10, 20, 30};
  recs[0].stop = 40;
  recs[1].tau = {12};
  recs[1].stop = 50;  // stopped early: tau_2 = tau_3 = tau_stop
  recs[1].missed_good = true;
  recs[2].tau = {14, 24};
  recs[2].censored = true;
  recs[3].censored = true;
  const auto row = gai::aggregate(cfg, recs);
  EXPECT_DOUBLE_EQ(row.taus[0].mean, 12.0);
  EXPECT_EQ(row.taus[0].censored, 1u);
  EXPECT_NEAR(row.taus[0].std, std::sqrt(8.0 / 3.0), 1e-12);
  EXPECT_TRUE(row.taus[0].reported);
  EXPECT_DOUBLE_EQ(row.taus[1].mean, (20.0 + 50.0 + 24.0) / 3.0);
  EXPECT_EQ(row.taus[2].censored, 2u);
  EXPECT_TRUE(row.taus[2].reported);  // exactly half censored is still shown
  EXPECT_EQ(row.stop.censored, 2u);
  EXPECT_EQ(row.errors, 1u);
  EXPECT_DOUBLE_EQ(row.error_rate, 0.25);

  cfg.censor_report_threshold = 0.25;
  EXPECT_FALSE(gai::aggregate(cfg, recs).stop.reported);
}

TEST(HarnessTest, ParallelismDoesNotChangeResults) {
  auto serial = config("threshold1", Algorithm::Hdoc, 24);
  auto parallel = serial;
  parallel.jobs = 4;
  EXPECT_EQ(gai::run_replications(serial), gai::run_replications(parallel));
}

TEST(HarnessTest, Validation) {
  auto cfg = config("threshold1", Algorithm::Hdoc, 0);
  EXPECT_THROW(gai::run_experiment(cfg), std::invalid_argument);
  cfg.runs = 1;
  cfg.delta = 1.5;
  EXPECT_THROW(gai::run_experiment(cfg), std::invalid_argument);
}

TEST(HarnessTest, SmallThreshold2Sanity) {
  const auto res = gai::run_experiment(config("threshold2", Algorithm::Hdoc, 50));
  EXPECT_EQ(res.row.errors, 0u);
  for (const auto& q : res.row.quantities()) {
    EXPECT_TRUE(q.reported);
    EXPECT_EQ(q.censored, 0u);
  }
  for (std::size_t l = 1; l < res.row.taus.size(); ++l) EXPECT_LT(res.row.taus[l - 1].mean, res.row.taus[l].mean);
}

TEST(SweepTest, SmallGrid) {
  gai::SweepConfig cfg;
  cfg.runs = 20;
  cfg.log_inv_deltas = {10};
  const auto rows = gai::lower_bound_sweep(cfg);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[4].algorithm, "lower-bound");
  EXPECT_EQ(rows[4].lambda, 1u);
  EXPECT_NEAR(rows[4].mean, 80.0, 1e-9);
  EXPECT_EQ(rows[4].std, 0.0);
  EXPECT_NEAR(rows[5].mean, 260.0, 1e-9);
  for (const auto& r : rows) EXPECT_TRUE(std::isfinite(r.mean));
}

TEST(SweepTest, LowerBoundLinearInLogInvDelta) {
  gai::SweepConfig cfg;
  cfg.runs = 2;
  cfg.algorithms = {};
  const auto rows = gai::lower_bound_sweep(cfg);
  ASSERT_EQ(rows.size(), 20u);
  for (const auto& r : rows) {
    const double slope = r.lambda == 1 ? 8.0 : 26.0;
    EXPECT_NEAR(r.mean, slope * r.log_inv_delta, 1e-9);
  }
}

TEST(CsvTest, EmitShape) {
  const auto res = gai::run_experiment(config("threshold2", Algorithm::Hdoc, 5));
  std::ostringstream out;
  gai::csv::emit_csv({res.row}, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "scenario,algorithm,delta,quantity,mean,std,censored,runs,seed");
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0].rfind("threshold2,hdoc,0.05,tau_1,", 0), 0u);
  EXPECT_EQ(lines[3].rfind("threshold2,hdoc,0.05,tau_stop,", 0), 0u);
  EXPECT_EQ(lines[3].substr(lines[3].size() - 7), ",0,5,11");
}

TEST(CsvTest, CensoredCellsAreEmpty) {
  gai::AggregateRow row;
  row.scenario = "medical2";
  row.algorithm = "apt-g";
  row.delta = 0.05;
  row.runs = 3;
  row.seed = 0;
  row.taus.push_back({"tau_1", std::nan(""), std::nan(""), 3, 3, false});
  row.stop = {"tau_stop", 10.0, 0.0, 2, 3, false};
  std::ostringstream out;
  gai::csv::emit_csv({row}, out);
  EXPECT_NE(out.str().find("medical2,apt-g,0.05,tau_1,,,3,3,0\n"), std::string::npos);
  EXPECT_NE(out.str().find("medical2,apt-g,0.05,tau_stop,,,2,3,0\n"), std::string::npos);
  EXPECT_EQ(gai::report::cell(row.taus[0]), "–");
}

// parse(emit(rows)) reproduces every numeric field bit for bit.
TEST(CsvProperty, RoundTrip) {
  std::vector<gai::AggregateRow> rows;
  for (auto algo : {Algorithm::Hdoc, Algorithm::LucbG}) {
    auto cfg = config("threshold2", algo, 7);
    cfg.delta = 0.0123456789;
    cfg.base_seed = 18446744073709551615ULL;
    rows.push_back(gai::run_experiment(cfg).row);
  }
  rows.back().taus[1].reported = false;
  rows.back().scenario = "odd, \"name\"";
  std::ostringstream out;
  gai::csv::emit_csv(rows, out);
  std::istringstream in(out.str());
  const auto parsed = gai::csv::parse_csv(in);
  std::size_t k = 0;
  for (const auto& row : rows) {
    for (const auto& q : row.quantities()) {
      ASSERT_LT(k, parsed.size());
      const auto& p = parsed[k++];
      EXPECT_EQ(p.scenario, row.scenario);
      EXPECT_EQ(p.algorithm, row.algorithm);
      EXPECT_EQ(p.delta, row.delta);
      EXPECT_EQ(p.quantity, q.quantity);
      EXPECT_EQ(p.mean.has_value(), q.reported);
      if (q.reported) {
        EXPECT_EQ(*p.mean, q.mean);
        EXPECT_EQ(*p.std, q.std);
      }
      EXPECT_EQ(p.censored, q.censored);
      EXPECT_EQ(p.runs, row.runs);
      EXPECT_EQ(p.seed, row.seed);
    }
  }
  EXPECT_EQ(k, parsed.size());
}

TEST(CsvTest, ParseRejectsGarbage) {
  std::istringstream bad_header("a,b,c\n");
  EXPECT_THROW(gai::csv::parse_csv(bad_header), std::invalid_argument);
  std::istringstream bad_row(std::string(gai::csv::kResultHeader) + "\nx,hdoc,zz,tau_1,1,1,0,1,0\n");
  EXPECT_THROW(gai::csv::parse_csv(bad_row), std::invalid_argument);
}

TEST(CsvTest, SweepShape) {
  std::vector<gai::SweepRow> rows{{10, "hdoc", 1, 123.5, 4.25}, {10, "lower-bound", 1, 80, 0}};
  std::ostringstream out;
  gai::csv::emit_sweep_csv(rows, out);
  EXPECT_EQ(out.str(), "log_inv_delta,algorithm,lambda,mean,std\n10,hdoc,1,123.5,4.25\n10,lower-bound,1,80,0\n");
}

}  // namespace
