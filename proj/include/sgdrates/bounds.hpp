#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "sgdrates/schedules.hpp"

namespace sgdrates {

/// Which convergence guarantee a bound triple or recursion instantiates.
enum class BoundSource { Thm1, PropOriginal, PropInterior, Thm2 };

/// High-probability bound in the form
///   Pr{ gap >= k_bar + sqrt(2 theta) k_tilde + theta k_hat } <= exp(-theta).
struct BoundTriple {
  double k_bar = 0.0;
  double k_tilde = 0.0;
  double k_hat = 0.0;
  BoundSource source = BoundSource::Thm1;
};

// Evaluators of the closed-form triples. All require T >= 1, kappa >= 1,
// D > 0, L > 0, Q >= 0 and throw std::invalid_argument otherwise.
BoundTriple bound_thm1(double D, double L, double Q, double kappa, std::int64_t T);
BoundTriple bound_prop_original(double D, double L, double Q, double kappa, std::int64_t T);
BoundTriple bound_prop_interior(double D, double L, double Q, double kappa, std::int64_t T);
BoundTriple bound_thm2(double D, double L, double Q, double kappa, std::int64_t T);
BoundTriple bound_for(BoundSource source, double D, double L, double Q, double kappa,
                      std::int64_t T);

/// k_bar + sqrt(2 theta) k_tilde + theta k_hat; nondecreasing in theta.
double quantile(const BoundTriple& bt, double theta);

/// exp(-eps^2 / (2 sigma^2 + 2 eps B)): tail bound for a random variable
/// whose log-mgf is at most sigma^2 u^2 / (2 (1 - u B)) on 0 <= u < 1/B.
double lemma0_tail_bound(double sigma, double B, double eps);

/// Threshold sqrt(2 theta sigma^2) + theta B whose tail probability is at
/// most exp(-theta) under the same mgf hypothesis.
double lemma0_threshold(double sigma, double B, double theta);

std::string_view to_string(BoundSource source);
BoundSource bound_source_from_string(std::string_view name);

/// The guarantee a runnable schedule instantiates, if any.
std::optional<BoundSource> bound_source_for(ScheduleKind kind);

}  // namespace sgdrates
