#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gai {

enum class RewardKind { Bernoulli, Gaussian };

inline std::string_view to_string(RewardKind kind) {
  return kind == RewardKind::Bernoulli ? "bernoulli" : "gaussian";
}

inline RewardKind parse_reward_kind(std::string_view name) {
  if (name == "bernoulli") return RewardKind::Bernoulli;
  if (name == "gaussian") return RewardKind::Gaussian;
  throw std::invalid_argument("unknown reward kind: " + std::string(name));
}

// Noise model shared by every arm of a scenario. The variance is only
// meaningful for Gaussian rewards.
struct NoiseModel {
  RewardKind kind = RewardKind::Bernoulli;
  double variance = 0.0;

  static NoiseModel bernoulli() { return {RewardKind::Bernoulli, 0.0}; }
  static NoiseModel gaussian(double variance) {
    if (!(variance > 0.0) || !std::isfinite(variance)) {
      throw std::invalid_argument("gaussian variance must be positive and finite");
    }
    return {RewardKind::Gaussian, variance};
  }
};

// Reward distribution of a single arm. Validated on construction.
class RewardModel {
 public:
  static RewardModel bernoulli(double mean) {
    if (!(mean >= 0.0 && mean <= 1.0)) {
      throw std::invalid_argument("bernoulli mean must lie in [0, 1]");
    }
    return RewardModel(NoiseModel::bernoulli(), mean);
  }

  static RewardModel gaussian(double mean, double variance) {
    if (!std::isfinite(mean)) throw std::invalid_argument("gaussian mean must be finite");
    return RewardModel(NoiseModel::gaussian(variance), mean);
  }

  static RewardModel make(const NoiseModel& noise, double mean) {
    return noise.kind == RewardKind::Bernoulli ? bernoulli(mean) : gaussian(mean, noise.variance);
  }

  RewardKind kind() const { return noise_.kind; }
  const NoiseModel& noise() const { return noise_; }
  double mean() const { return mean_; }
  double variance() const { return noise_.variance; }

 private:
  RewardModel(NoiseModel noise, double mean) : noise_(noise), mean_(mean) {}

  NoiseModel noise_;
  double mean_;
};

// Deterministic pseudo-random stream owned by one replication.
//
// The engine is a 64-bit Mersenne Twister whose seed is the SplitMix64 mix of
// (base_seed, run_index). Uniform and normal variates are derived by hand
// rather than through std:: distributions so that the sequence does not
// depend on the standard library implementation.
class RngStream {
 public:
  RngStream(std::uint64_t base_seed, std::uint64_t run_index)
      : engine_(mix(base_seed, run_index)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double next_open_unit() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  // Standard normal via Box-Muller. Consumes exactly two engine outputs and
  // keeps no spare value, so every call advances the stream identically.
  double next_standard_normal() {
    const double u1 = next_open_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t mix(std::uint64_t base_seed, std::uint64_t run_index) {
    return splitmix64(splitmix64(base_seed) ^ (run_index * 0xd1b54a32d192ed03ULL + 1));
  }

  std::mt19937_64 engine_;
};

// Draws one reward. Bernoulli rewards are returned as 0.0 / 1.0.
inline double sample(const RewardModel& model, RngStream& rng) {
  if (model.kind() == RewardKind::Bernoulli) {
    return rng.next_unit() < model.mean() ? 1.0 : 0.0;
  }
  return model.mean() + std::sqrt(model.variance()) * rng.next_standard_normal();
}

}  // namespace gai
