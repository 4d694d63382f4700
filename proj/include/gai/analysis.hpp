#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gai/arms.hpp"
#include "gai/core.hpp"

// Closed-form sample-complexity quantities for good arm identification:
// the KL lower bound on E[tau_lambda], the finite-delta upper bounds of the
// HDoC analysis and their asymptotic (delta -> 0) coefficients.
//
// All gap-based formulas are stated for Bernoulli rewards, whose tail obeys
// P[mean_n <= mu - e] <= exp(-2 n e^2). A Gaussian model with variance s^2
// has tail exp(-n e^2 / (2 s^2)), i.e. the Bernoulli bound applied to gaps
// divided by 2s. Gaussian instances are therefore evaluated on rescaled gaps
// (see Instance::gap_scale), and the KL divergence becomes (mu - xi)^2 / 2s^2.
namespace gai::analysis {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Raised when the hypotheses of the upper bound do not hold. The message
// names the violated condition.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// d(x, y) = x log(x/y) + (1-x) log((1-x)/(1-y)), with 0 log 0 = 0 and
// +infinity when y sits on a boundary that x does not.
inline double binary_relative_entropy(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0)) {
    throw std::domain_error("binary relative entropy needs arguments in [0, 1]");
  }
  auto term = [](double a, double b) {
    if (a == 0.0) return 0.0;
    if (b == 0.0) return kInf;
    return a * std::log(a / b);
  };
  return term(x, y) + term(1.0 - x, 1.0 - y);
}

// Problem instance with means sorted in descending order.
class Instance {
 public:
  Instance(std::vector<double> means, double threshold, double delta, NoiseModel noise = NoiseModel::bernoulli())
      : means_(std::move(means)), threshold_(threshold), delta_(delta), noise_(noise) {
    if (means_.empty()) throw std::invalid_argument("instance needs at least one arm");
    if (!(delta_ > 0.0 && delta_ < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    std::sort(means_.begin(), means_.end(), std::greater<>());
  }

  static Instance from_scenario(const Scenario& s, double delta) {
    return Instance(s.means(), s.threshold(), delta, s.noise());
  }

  const std::vector<double>& means() const { return means_; }
  double threshold() const { return threshold_; }
  double delta() const { return delta_; }
  const NoiseModel& noise() const { return noise_; }
  std::size_t num_arms() const { return means_.size(); }

  std::size_t good_count() const {
    return static_cast<std::size_t>(
        std::count_if(means_.begin(), means_.end(), [&](double mu) { return mu >= threshold_; }));
  }

  // |mu_i - xi| for the i-th largest mean, 1-based.
  double gap(std::size_t i) const { return std::abs(means_.at(i - 1) - threshold_); }

  // mu_i - mu_j, 1-based.
  double pair_gap(std::size_t i, std::size_t j) const { return means_.at(i - 1) - means_.at(j - 1); }

  double min_gap() const {
    double g = kInf;
    for (std::size_t i = 1; i <= num_arms(); ++i) g = std::min(g, gap(i));
    return g;
  }

  // min{ min_i gap_i, min_l (mu_l - mu_{l+1}) / 2 }.
  double separation() const {
    double s = min_gap();
    for (std::size_t l = 1; l < num_arms(); ++l) s = std::min(s, pair_gap(l, l + 1) / 2.0);
    return s;
  }

  // Divisor that maps gaps of this reward model onto Bernoulli-equivalent gaps.
  double gap_scale() const {
    return noise_.kind == RewardKind::Gaussian ? 2.0 * std::sqrt(noise_.variance) : 1.0;
  }

  // KL divergence between the reward law at mean mu and the one at the threshold.
  double divergence_to_threshold(double mu) const {
    if (noise_.kind == RewardKind::Bernoulli) return binary_relative_entropy(mu, threshold_);
    const double d = mu - threshold_;
    return d * d / (2.0 * noise_.variance);
  }

 private:
  std::vector<double> means_;
  double threshold_;
  double delta_;
  NoiseModel noise_;
};

namespace detail {

inline void require_lambda(const Instance& inst, std::size_t lambda) {
  if (lambda < 1 || lambda > inst.good_count()) {
    throw std::invalid_argument("lambda must lie in [1, m] where m = " + std::to_string(inst.good_count()));
  }
}

}  // namespace detail

struct LowerBound {
  double raw;      // may be negative, or -infinity when d(mu_lambda, xi) = 0
  double clamped;  // max(0, raw)
};

// Lower bound on E[tau_lambda] for any (lambda, delta)-PAC algorithm:
// sum_{i<=lambda} log(1/2delta) / d(mu_i, xi) - m / d(mu_lambda, xi).
inline LowerBound lower_bound_tau(const Instance& inst, std::size_t lambda) {
  detail::require_lambda(inst, lambda);
  const double log_term = std::log(1.0 / (2.0 * inst.delta()));
  const double d_lambda = inst.divergence_to_threshold(inst.means()[lambda - 1]);
  if (d_lambda == 0.0) return {-kInf, 0.0};
  double sum = 0.0;
  for (std::size_t i = 0; i < lambda; ++i) {
    sum += log_term / inst.divergence_to_threshold(inst.means()[i]);
  }
  const double raw = sum - static_cast<double>(inst.good_count()) / d_lambda;
  return {raw, std::max(0.0, raw)};
}

// sum_{i<=lambda} 2 s^2 log(1/delta) / gap_i^2, the Gaussian asymptotic lower bound.
inline double gaussian_lower_bound_curve(const Instance& inst, std::size_t lambda, double log_inv_delta) {
  if (inst.noise().kind != RewardKind::Gaussian) throw std::invalid_argument("gaussian lower bound needs a gaussian instance");
  if (lambda < 1 || lambda > inst.num_arms()) throw std::invalid_argument("lambda out of range");
  double total = 0.0;
  for (std::size_t i = 1; i <= lambda; ++i) {
    const double g = inst.gap(i);
    if (g == 0.0) throw std::domain_error("zero gap for arm " + std::to_string(i) + " in lower bound curve");
    total += 2.0 * inst.noise().variance * log_inv_delta / (g * g);
  }
  return total;
}

// n_i = 1/g^2 log( 4 sqrt(K/delta)/g^2 * log(5 sqrt(K/delta)/g^2) ), g = gap - epsilon.
// Gaps are in Bernoulli units.
inline double n_term(double gap, double epsilon, std::size_t num_arms, double delta) {
  if (!(epsilon > 0.0 && epsilon < gap)) throw HypothesisError("n_term requires 0 < epsilon < gap");
  if (num_arms < 1) throw std::invalid_argument("n_term requires K >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("n_term requires delta in (0, 1)");
  const double g2 = (gap - epsilon) * (gap - epsilon);
  const double c = std::sqrt(static_cast<double>(num_arms) / delta);
  const double inner = std::log(5.0 * c / g2);
  const double arg = 4.0 * c / g2 * inner;
  if (!(inner > 0.0)) throw std::domain_error("n_term: inner logarithm is not positive");
  return std::log(arg) / g2;
}

// Upper bound on E[tau_stop]: sum_i n_i + K / (2 eps^2). Requires eps < min gap.
inline double upper_tau_stop(const Instance& inst, double epsilon) {
  const double s = inst.gap_scale();
  const double eps = epsilon / s;
  if (!(epsilon > 0.0)) throw HypothesisError("epsilon must be positive");
  if (!(epsilon < inst.min_gap())) throw HypothesisError("epsilon < min_i gap_i violated");
  const std::size_t k = inst.num_arms();
  double total = 0.0;
  for (std::size_t i = 1; i <= k; ++i) total += n_term(inst.gap(i) / s, eps, k, inst.delta());
  return total + static_cast<double>(k) / (2.0 * eps * eps);
}

// Upper bound on E[tau_lambda] for HDoC. Requires mu_lambda > mu_{lambda+1}
// and eps < min{ min_i gap_i, (mu_lambda - mu_{lambda+1}) / 2 }.
//
// The K^{2 - eps^2/(min gap - eps)^2} / (2 eps^2) term keeps the exponent
// grouping exactly as published.
inline double upper_tau_lambda(const Instance& inst, std::size_t lambda, double epsilon) {
  detail::require_lambda(inst, lambda);
  const std::size_t k = inst.num_arms();
  const double s = inst.gap_scale();
  if (!(epsilon > 0.0)) throw HypothesisError("epsilon must be positive");
  if (lambda < k && !(inst.pair_gap(lambda, lambda + 1) > 0.0)) {
    throw HypothesisError("mu_lambda > mu_{lambda+1} violated (zero gap between ranks " + std::to_string(lambda) +
                          " and " + std::to_string(lambda + 1) + ")");
  }
  if (!(epsilon < inst.min_gap())) throw HypothesisError("epsilon < min_i gap_i violated");
  if (lambda < k && !(epsilon < inst.pair_gap(lambda, lambda + 1) / 2.0)) {
    throw HypothesisError("epsilon < (mu_lambda - mu_{lambda+1}) / 2 violated");
  }

  const double eps = epsilon / s;
  const double delta = inst.delta();
  std::vector<double> n(k);
  for (std::size_t i = 1; i <= k; ++i) n[i - 1] = n_term(inst.gap(i) / s, eps, k, delta);
  const double n_max = *std::max_element(n.begin(), n.end());

  double total = 0.0;
  for (std::size_t i = 1; i <= lambda; ++i) total += n[i - 1];
  for (std::size_t i = lambda + 1; i <= k; ++i) {
    const double g = inst.pair_gap(lambda, i) / s - 2.0 * eps;
    total += std::log(static_cast<double>(k) * n_max) / (2.0 * g * g) + delta * n[i - 1];
  }
  const double kd = static_cast<double>(k);
  const double min_gap = inst.min_gap() / s;
  const double exponent = 2.0 - eps * eps / ((min_gap - eps) * (min_gap - eps));
  total += std::pow(kd, exponent) / (2.0 * eps * eps);
  total += kd * (5.0 + std::log(1.0 / (2.0 * eps * eps))) / (4.0 * eps * eps);
  return total;
}

struct UpperBounds {
  double tau_lambda;
  double tau_stop;
};

inline UpperBounds upper_bounds(const Instance& inst, std::size_t lambda, double epsilon) {
  return {upper_tau_lambda(inst, lambda, epsilon), upper_tau_stop(inst, epsilon)};
}

// limsup E[tau_lambda] / log(1/delta) <= sum_{i<=lambda} 1 / (2 gap_i^2)
// in Bernoulli units (2 s^2 / gap_i^2 for Gaussian rewards).
inline double asymptotic_coefficient(const Instance& inst, std::size_t count) {
  if (count < 1 || count > inst.num_arms()) throw std::invalid_argument("arm count out of range");
  const double s = inst.gap_scale();
  double total = 0.0;
  for (std::size_t i = 1; i <= count; ++i) {
    const double g = inst.gap(i) / s;
    if (g == 0.0) throw std::domain_error("zero gap for arm " + std::to_string(i) + ": coefficient is unbounded");
    total += 1.0 / (2.0 * g * g);
  }
  return total;
}

struct AsymptoticCoefficients {
  double tau_lambda;
  double tau_stop;
};

inline AsymptoticCoefficients asymptotic_coefficients(const Instance& inst, std::size_t lambda) {
  detail::require_lambda(inst, lambda);
  return {asymptotic_coefficient(inst, lambda), asymptotic_coefficient(inst, inst.num_arms())};
}

// Half of the instance separation; zero when two means coincide or a mean
// sits on the threshold.
inline double default_epsilon(const Instance& inst) { return inst.separation() / 2.0; }

// Everything the bounds report prints. Quantities that are undefined for
// the instance are left empty and explained in `notes`.
struct BoundReport {
  std::size_t lambda = 1;
  double epsilon = 0.0;
  std::vector<LowerBound> lower_tau;                  // per lambda' = 1..m
  std::vector<std::optional<double>> asymptotic_coeff;  // per lambda' = 1..m
  std::optional<double> asymptotic_coeff_stop;
  std::vector<std::optional<double>> n_terms;          // per sorted arm
  std::optional<double> upper_tau_lambda;
  std::optional<double> upper_tau_stop;
  std::vector<std::string> notes;
};

inline BoundReport make_bound_report(const Instance& inst, std::size_t lambda, std::optional<double> epsilon) {
  detail::require_lambda(inst, lambda);
  BoundReport r;
  r.lambda = lambda;
  r.epsilon = epsilon.value_or(default_epsilon(inst));
  const std::size_t m = inst.good_count();
  for (std::size_t l = 1; l <= m; ++l) {
    r.lower_tau.push_back(lower_bound_tau(inst, l));
    if (!std::isfinite(r.lower_tau.back().raw)) {
      r.notes.push_back("lower bound for lambda=" + std::to_string(l) + " is vacuous: mean of rank " +
                        std::to_string(l) + " equals the threshold");
    }
    try {
      r.asymptotic_coeff.push_back(asymptotic_coefficient(inst, l));
    } catch (const std::domain_error&) {
      r.asymptotic_coeff.push_back(std::nullopt);
    }
  }
  try {
    r.asymptotic_coeff_stop = asymptotic_coefficient(inst, inst.num_arms());
  } catch (const std::domain_error& e) {
    r.notes.push_back(std::string("tau_stop coefficient unbounded: ") + e.what());
  }
  const double s = inst.gap_scale();
  for (std::size_t i = 1; i <= inst.num_arms(); ++i) {
    try {
      r.n_terms.push_back(n_term(inst.gap(i) / s, r.epsilon / s, inst.num_arms(), inst.delta()));
    } catch (const std::domain_error&) {
      r.n_terms.push_back(std::nullopt);
    }
  }
  try {
    r.upper_tau_lambda = upper_tau_lambda(inst, lambda, r.epsilon);
  } catch (const std::domain_error& e) {
    r.notes.push_back(std::string("tau_lambda upper bound unbounded: ") + e.what());
  }
  try {
    r.upper_tau_stop = upper_tau_stop(inst, r.epsilon);
  } catch (const std::domain_error& e) {
    r.notes.push_back(std::string("tau_stop upper bound unbounded: ") + e.what());
  }
  return r;
}

}  // namespace gai::analysis
