#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace sgdrates {

/// Step-size / averaging families. The first four pair a step size gamma_t
/// with an averaging rule; GeneralizedR and Exponential are weighting schemes
/// used by the averaged-variance calculators.
enum class ScheduleKind {
  Thm1,          // alpha_t = 2/(t+1), gamma_t = 2/(mu (t + 2 kappa)); weights w_t ~ t
  PropOriginal,  // alpha_t = 1/t, gamma_t = 1/(mu (t + kappa)); uniform weights
  PropInterior,  // gamma_t = 1/(mu (t + kappa)); no averaging, output x_T
  Thm2,          // alpha_t = 2/(t+1), gamma_t = 1/(mu (2 kappa / t + 1/alpha_t))
  GeneralizedR,  // weights w_t ~ t^r
  Exponential,   // w_t = alpha (1-alpha)^(T-t), recency-weighted
};

struct ScheduleConfig {
  ScheduleKind kind = ScheduleKind::Thm1;
  double mu = 1.0;
  double kappa = 1.0;
  double r = 0.0;      // GeneralizedR exponent, r >= 0
  double decay = 0.5;  // Exponential averaging factor, in (0, 1]

  static ScheduleConfig thm1(double mu, double kappa) { return {ScheduleKind::Thm1, mu, kappa, 0.0, 0.5}; }
  static ScheduleConfig prop_original(double mu, double kappa) {
    return {ScheduleKind::PropOriginal, mu, kappa, 0.0, 0.5};
  }
  static ScheduleConfig prop_interior(double mu, double kappa) {
    return {ScheduleKind::PropInterior, mu, kappa, 0.0, 0.5};
  }
  static ScheduleConfig thm2(double mu, double kappa) { return {ScheduleKind::Thm2, mu, kappa, 0.0, 0.5}; }
  static ScheduleConfig generalized(double mu, double kappa, double r) {
    return {ScheduleKind::GeneralizedR, mu, kappa, r, 0.5};
  }
  static ScheduleConfig exponential(double alpha) {
    return {ScheduleKind::Exponential, 1.0, 1.0, 0.0, alpha};
  }
};

/// alpha_t for t >= 1. PropInterior returns 1 (running "average" is the last
/// iterate). Throws for t < 1.
double averaging_factor(const ScheduleConfig& cfg, std::int64_t t);

/// gamma_t for t >= 1. Defined for Thm1, PropOriginal, PropInterior, Thm2 and
/// GeneralizedR (which reuses 1/(mu (t + kappa))); throws for Exponential.
double step_size(const ScheduleConfig& cfg, std::int64_t t);

/// Bulk versions used by the optimizers; entry [t-1] holds the value at t.
std::vector<double> averaging_factors(const ScheduleConfig& cfg, std::int64_t T);
std::vector<double> step_sizes(const ScheduleConfig& cfg, std::int64_t T);

/// Closed-form weights w_1..w_T induced by the averaging recursion; they are
/// nonnegative and sum to 1.
std::vector<double> weights(const ScheduleConfig& cfg, std::int64_t T);

/// sum_t w_t^2: the variance of the weighted average of T unit-variance
/// independent terms.
double averaged_variance(const ScheduleConfig& cfg, std::int64_t T);

/// 1 / averaged_variance: how many equally weighted samples give the same
/// averaged variance.
double effective_tail_samples(const ScheduleConfig& cfg, std::int64_t T);

/// Partial harmonic sum over tau = t+1..T. Requires 0 <= t <= T.
double log_tilde(std::int64_t T, std::int64_t t);

/// Large-T approximation (1+r)^2 / ((1+2r) T) of the GeneralizedR averaged
/// variance, exposed for comparison against the exact sum.
double generalized_variance_approx(double r, std::int64_t T);

std::string_view to_string(ScheduleKind kind);
ScheduleKind schedule_kind_from_string(std::string_view name);

}  // namespace sgdrates
