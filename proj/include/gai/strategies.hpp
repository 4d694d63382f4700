#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "gai/core.hpp"
#include "gai/scores.hpp"

namespace gai {

// Scenario constants visible to a sampling strategy.
struct RunContext {
  ConfidenceParams params;
  double threshold = 0.5;
};

template <typename S>
concept SamplingStrategy = requires(const S& s, const AgentState& state, const RunContext& ctx) {
  { s.select(state, ctx) } -> std::convertible_to<std::size_t>;
  { S::name } -> std::convertible_to<std::string_view>;
};

namespace detail {

// Argmax of `score` over active arms; ties go to the lowest index.
template <typename Score>
std::size_t argmax_active(const AgentState& state, Score&& score) {
  const auto& active = state.active();
  if (active.empty()) throw std::logic_error("no active arm to select");
  std::size_t best = active.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t arm : active) {
    const double s = score(state.stats(arm));
    if (s > best_score) {
      best_score = s;
      best = arm;
    }
  }
  return best;
}

}  // namespace detail

// Pulls the active arm with the largest UCB score using a log(t) bonus.
struct HdocStrategy {
  static constexpr std::string_view name = "hdoc";

  std::size_t select(const AgentState& state, const RunContext& ctx) const {
    const std::uint64_t t = state.round();
    if (t == 0) throw std::logic_error("hdoc selection needs every arm pulled once");
    const double log_t = std::log(static_cast<double>(t));
    const NoiseModel& noise = ctx.params.noise;
    return detail::argmax_active(state, [&](const ArmStats& s) {
      detail::require_pulled(s);
      return empirical_mean(s) + detail::radius(log_t, s.pulls, noise);
    });
  }
};

// Pulls the active arm with the largest anytime upper confidence bound.
struct LucbGStrategy {
  static constexpr std::string_view name = "lucb-g";

  std::size_t select(const AgentState& state, const RunContext& ctx) const {
    return detail::argmax_active(state, [&](const ArmStats& s) { return lucb_ucb_score(s, ctx.params); });
  }
};

// Pulls the active arm whose empirical mean is statistically closest to the
// threshold.
struct AptGStrategy {
  static constexpr std::string_view name = "apt-g";

  std::size_t select(const AgentState& state, const RunContext& ctx) const {
    return detail::argmax_active(state, [&](const ArmStats& s) { return -apt_score(s, ctx.threshold); });
  }
};

static_assert(SamplingStrategy<HdocStrategy>);
static_assert(SamplingStrategy<LucbGStrategy>);
static_assert(SamplingStrategy<AptGStrategy>);

enum class Algorithm { Hdoc, LucbG, AptG };

using AnyStrategy = std::variant<HdocStrategy, LucbGStrategy, AptGStrategy>;

inline std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::Hdoc: return HdocStrategy::name;
    case Algorithm::LucbG: return LucbGStrategy::name;
    case Algorithm::AptG: return AptGStrategy::name;
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view name) {
  if (name == HdocStrategy::name) return Algorithm::Hdoc;
  if (name == LucbGStrategy::name) return Algorithm::LucbG;
  if (name == AptGStrategy::name) return Algorithm::AptG;
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

inline AnyStrategy make_strategy(Algorithm algo) {
  switch (algo) {
    case Algorithm::Hdoc: return HdocStrategy{};
    case Algorithm::LucbG: return LucbGStrategy{};
    case Algorithm::AptG: return AptGStrategy{};
  }
  throw std::invalid_argument("unknown algorithm");
}

inline std::size_t select_arm(Algorithm algo, const AgentState& state, const RunContext& ctx) {
  return std::visit([&](const auto& s) { return s.select(state, ctx); }, make_strategy(algo));
}

}  // namespace gai
