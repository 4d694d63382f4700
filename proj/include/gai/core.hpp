#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gai/arms.hpp"
#include "gai/scores.hpp"

namespace gai {

// Ground-truth problem instance. Arm order is preserved as given.
class Scenario {
 public:
  Scenario(std::string name, NoiseModel noise, const std::vector<double>& means, double threshold)
      : name_(std::move(name)), noise_(noise), threshold_(threshold) {
    if (means.empty()) throw std::invalid_argument("scenario needs at least one arm");
    if (!std::isfinite(threshold)) throw std::invalid_argument("threshold must be finite");
    if (noise.kind == RewardKind::Bernoulli && !(threshold > 0.0 && threshold < 1.0)) {
      throw std::invalid_argument("bernoulli threshold must lie in (0, 1)");
    }
    arms_.reserve(means.size());
    for (double mu : means) arms_.push_back(RewardModel::make(noise, mu));
  }

  const std::string& name() const { return name_; }
  const NoiseModel& noise() const { return noise_; }
  double threshold() const { return threshold_; }
  std::size_t num_arms() const { return arms_.size(); }
  const std::vector<RewardModel>& arms() const { return arms_; }
  const RewardModel& arm(std::size_t i) const { return arms_.at(i); }

  std::vector<double> means() const {
    std::vector<double> out;
    out.reserve(arms_.size());
    for (const auto& a : arms_) out.push_back(a.mean());
    return out;
  }

  bool is_good(std::size_t i) const { return arms_.at(i).mean() >= threshold_; }

  std::size_t good_count() const {
    return static_cast<std::size_t>(
        std::count_if(arms_.begin(), arms_.end(), [&](const RewardModel& a) { return a.mean() >= threshold_; }));
  }

 private:
  std::string name_;
  NoiseModel noise_;
  double threshold_;
  std::vector<RewardModel> arms_;
};

struct GoodOutput {
  std::size_t arm;
  std::uint64_t round;

  friend bool operator==(const GoodOutput&, const GoodOutput&) = default;
};

// Mutable state of one agent: global round, per-arm statistics, the active
// set, the ordered good-arm outputs and the stopping round.
//
// Invariants: sum of pulls equals round; output arms are distinct and not
// active; nothing changes once stopped.
class AgentState {
 public:
  explicit AgentState(std::size_t num_arms) : stats_(num_arms), is_active_(num_arms, true) {
    if (num_arms == 0) throw std::invalid_argument("agent needs at least one arm");
    active_.reserve(num_arms);
    for (std::size_t i = 0; i < num_arms; ++i) active_.push_back(i);
  }

  std::uint64_t round() const { return round_; }
  std::size_t num_arms() const { return stats_.size(); }
  const std::vector<ArmStats>& stats() const { return stats_; }
  const ArmStats& stats(std::size_t arm) const { return stats_.at(arm); }
  // Active arm indices in ascending order.
  const std::vector<std::size_t>& active() const { return active_; }
  bool is_active(std::size_t arm) const { return arm < is_active_.size() && is_active_[arm]; }
  const std::vector<GoodOutput>& good_outputs() const { return good_outputs_; }
  const std::optional<std::uint64_t>& stop_round() const { return stop_round_; }
  bool stopped() const { return stop_round_.has_value(); }

  void record_pull(std::size_t arm, double reward) {
    require_running();
    if (!is_active(arm)) throw std::invalid_argument("cannot pull an inactive arm");
    stats_[arm].add(reward);
    ++round_;
  }

  void accept(std::size_t arm) {
    deactivate(arm);
    good_outputs_.push_back({arm, round_});
    stop_if_exhausted();
  }

  void reject(std::size_t arm) {
    deactivate(arm);
    stop_if_exhausted();
  }

 private:
  void require_running() const {
    if (stopped()) throw std::logic_error("agent state is frozen after stopping");
  }

  void deactivate(std::size_t arm) {
    require_running();
    if (!is_active(arm)) throw std::invalid_argument("arm is not active");
    is_active_[arm] = false;
    active_.erase(std::find(active_.begin(), active_.end(), arm));
  }

  void stop_if_exhausted() {
    if (active_.empty()) stop_round_ = round_;
  }

  std::uint64_t round_ = 0;
  std::vector<ArmStats> stats_;
  std::vector<bool> is_active_;
  std::vector<std::size_t> active_;
  std::vector<GoodOutput> good_outputs_;
  std::optional<std::uint64_t> stop_round_;
};

enum class Decision { Good, Bad, Undecided };

// Pure identification rule for one arm snapshot: good when the lower
// confidence bound reaches the threshold, bad when the upper bound falls
// below it.
inline Decision classify(const ArmStats& stats, const ConfidenceParams& params, double threshold) {
  if (lcb_score(stats, params) >= threshold) return Decision::Good;
  if (lucb_ucb_score(stats, params) < threshold) return Decision::Bad;
  return Decision::Undecided;
}

// Applies the identification rule to `arm` and updates the state. When the
// active set empties the stopping round is the current round.
inline Decision identify(AgentState& state, std::size_t arm, const ConfidenceParams& params,
                         double threshold) {
  if (!state.is_active(arm)) throw std::invalid_argument("identify: arm is not active");
  const Decision d = classify(state.stats(arm), params, threshold);
  if (d == Decision::Good) state.accept(arm);
  if (d == Decision::Bad) state.reject(arm);
  return d;
}

// Outcome of one replication.
struct RunRecord {
  std::vector<std::uint64_t> tau;         // rounds of the good-arm outputs
  std::optional<std::uint64_t> stop;      // round of the stop signal
  std::vector<std::size_t> outputs;       // arms output as good, in order
  bool bad_output = false;                // some output arm has mean below threshold
  bool missed_good = false;               // stopped having output fewer than m arms
  bool censored = false;                  // budget exhausted before stopping
  std::uint64_t pulls = 0;                // total pulls executed

  bool error() const { return bad_output || missed_good; }

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline RunRecord make_record(const AgentState& state, const Scenario& scenario) {
  RunRecord rec;
  rec.pulls = state.round();
  for (const auto& out : state.good_outputs()) {
    rec.tau.push_back(out.round);
    rec.outputs.push_back(out.arm);
    if (!scenario.is_good(out.arm)) rec.bad_output = true;
  }
  rec.stop = state.stop_round();
  rec.censored = !state.stopped();
  rec.missed_good = state.stopped() && rec.outputs.size() < scenario.good_count();
  return rec;
}

}  // namespace gai
