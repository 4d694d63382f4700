#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>

#include "gai/arms.hpp"
#include "gai/core.hpp"
#include "gai/strategies.hpp"

namespace gai {

struct RunOptions {
  double delta = 0.05;
  std::uint64_t burn_in = 1;
  std::uint64_t budget = 100000;
  // Optional early exit once this many good arms have been output. Used by
  // sweeps that only need the first few output rounds; leaves the record
  // censored when the agent has not stopped on its own.
  std::optional<std::size_t> stop_after_outputs;
};

namespace detail {

inline void pull_and_identify(AgentState& state, const Scenario& scenario, std::size_t arm,
                              const RunContext& ctx, RngStream& rng) {
  state.record_pull(arm, sample(scenario.arm(arm), rng));
  identify(state, arm, ctx.params, ctx.threshold);
}

}  // namespace detail

// One replication: a burn-in sweep in index order followed by adaptive
// sampling until the active set empties or the budget is spent.
template <SamplingStrategy Strategy>
RunRecord run(const Scenario& scenario, const Strategy& strategy, const RunOptions& opts, RngStream& rng) {
  const std::size_t k = scenario.num_arms();
  const RunContext ctx{ConfidenceParams{k, opts.delta, scenario.noise()}, scenario.threshold()};
  ctx.params.validate();
  if (opts.burn_in < 1) throw std::invalid_argument("burn-in must be at least 1");
  if (opts.budget < k * opts.burn_in) throw std::invalid_argument("budget must cover the burn-in pulls");

  AgentState state(k);
  auto done = [&] {
    return state.stopped() ||
           (opts.stop_after_outputs && state.good_outputs().size() >= *opts.stop_after_outputs);
  };

  for (std::uint64_t rep = 0; rep < opts.burn_in && !done(); ++rep) {
    for (std::size_t arm = 0; arm < k && !done(); ++arm) {
      if (state.is_active(arm)) detail::pull_and_identify(state, scenario, arm, ctx, rng);
    }
  }
  while (!done() && state.round() < opts.budget) {
    detail::pull_and_identify(state, scenario, strategy.select(state, ctx), ctx, rng);
  }
  return make_record(state, scenario);
}

inline RunRecord run(const Scenario& scenario, Algorithm algo, const RunOptions& opts, RngStream& rng) {
  return std::visit([&](const auto& s) { return run(scenario, s, opts, rng); }, make_strategy(algo));
}

}  // namespace gai
