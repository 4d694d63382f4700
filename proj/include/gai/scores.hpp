#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "gai/arms.hpp"

namespace gai {

// Pull count and reward sum of one arm.
struct ArmStats {
  std::uint64_t pulls = 0;
  double reward_sum = 0.0;

  void add(double reward) {
    ++pulls;
    reward_sum += reward;
  }
};

inline double empirical_mean(const ArmStats& stats) {
  if (stats.pulls == 0) throw std::domain_error("empirical mean undefined for an arm with no pulls");
  return stats.reward_sum / static_cast<double>(stats.pulls);
}

// Constants of the identification rule: number of arms K, acceptance error
// rate delta and the reward noise model.
struct ConfidenceParams {
  std::size_t num_arms = 1;
  double delta = 0.05;
  NoiseModel noise{};

  void validate() const {
    if (num_arms == 0) throw std::invalid_argument("number of arms must be at least 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  }
};

namespace detail {

// sqrt(log_term / (2n)) for Bernoulli, sqrt(2 sigma^2 log_term / n) for Gaussian.
inline double radius(double log_term, std::uint64_t pulls, const NoiseModel& noise) {
  const double n = static_cast<double>(pulls);
  if (noise.kind == RewardKind::Bernoulli) return std::sqrt(log_term / (2.0 * n));
  return std::sqrt(2.0 * noise.variance * log_term / n);
}

inline void require_pulled(const ArmStats& stats) {
  if (stats.pulls == 0) throw std::domain_error("score undefined for an arm with no pulls");
}

}  // namespace detail

// Exploration bonus of the HDoC sampling score at round t.
inline double hdoc_bonus(std::uint64_t pulls, std::uint64_t round, const NoiseModel& noise) {
  if (round == 0) throw std::domain_error("hdoc score requires round >= 1");
  return detail::radius(std::log(static_cast<double>(round)), pulls, noise);
}

// Half-width of the anytime confidence interval used by LUCB-G and by the
// identification rule: log(4 K n^2 / delta) inside the square root.
inline double confidence_radius(std::uint64_t pulls, const ConfidenceParams& params) {
  const double n = static_cast<double>(pulls);
  const double log_term =
      std::log(4.0 * static_cast<double>(params.num_arms) * n * n / params.delta);
  return detail::radius(log_term, pulls, params.noise);
}

inline double hdoc_score(const ArmStats& stats, std::uint64_t round, const NoiseModel& noise) {
  detail::require_pulled(stats);
  return empirical_mean(stats) + hdoc_bonus(stats.pulls, round, noise);
}

inline double lucb_ucb_score(const ArmStats& stats, const ConfidenceParams& params) {
  detail::require_pulled(stats);
  return empirical_mean(stats) + confidence_radius(stats.pulls, params);
}

inline double lcb_score(const ArmStats& stats, const ConfidenceParams& params) {
  detail::require_pulled(stats);
  return empirical_mean(stats) - confidence_radius(stats.pulls, params);
}

// APT statistic sqrt(N) |threshold - mean|; identical for both reward models.
inline double apt_score(const ArmStats& stats, double threshold) {
  detail::require_pulled(stats);
  return std::sqrt(static_cast<double>(stats.pulls)) * std::abs(threshold - empirical_mean(stats));
}

}  // namespace gai
