#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sgdrates/problems.hpp"
#include "sgdrates/schedules.hpp"

namespace sgdrates {

/// Trajectory summary of one optimization run. gaps[t-1] is the optimality
/// gap of the output candidate after iteration t (the running weighted
/// average, or the iterate itself in the non-averaged mode); A[t] is
/// ||x_t - x*||^2 with A[0] for the start point.
struct RunRecord {
  std::int64_t T = 0;
  std::vector<double> gaps;
  std::vector<double> A;
  double final_gap = 0.0;
  std::int64_t lemma_violations = 0;
  std::uint64_t seed = 0;
};

/// Per-iteration view for instrumentation (feasibility checks, weighted-sum
/// cross-checks). y is null for the non-accelerated algorithm.
struct StepSnapshot {
  std::int64_t t;
  const Vector& x;
  const Vector& xbar;
  const Vector* y;
};

using StepObserver = std::function<void(const StepSnapshot&)>;

/// Projected SGD with a running weighted average:
///   x_t    = project(x_{t-1} - gamma_t * G(x_{t-1}, xi_t))
///   xbar_t = xbar_{t-1} + alpha_t (x_t - xbar_{t-1}),  xbar_0 = x_0.
/// PropInterior skips the averaging and reports the last iterate. With
/// assert_lemma set, every iteration checks the per-step descent inequality
///   f(x_t) - f* <= (1 - gamma mu)/(2 gamma) A_{t-1} - A_t/(2 gamma)
///                  - <delta, x_{t-1} - x*> + gamma ||delta||^2 / (2 (1 - gamma L))
/// and counts violations beyond 1e-9.
RunRecord run_sgd(const ProblemSpec& spec, const ScheduleConfig& cfg, std::int64_t T,
                  const Vector& x0, std::uint64_t seed, bool assert_lemma = false,
                  const StepObserver& observer = {});

/// Accelerated variant (Thm2 schedule only):
///   y_{t-1} = alpha_t x_{t-1} + (1 - alpha_t) xbar_{t-1}
///   x_t     = project(x_{t-1} - gamma_t (G(y_{t-1}, xi_t) - mu (y_{t-1} - x_{t-1})))
///   xbar_t  = xbar_{t-1} + alpha_t (x_t - xbar_{t-1}).
/// With assert_lemma set, checks the accelerated per-step inequality
/// including the (1 - alpha_t) carry of the previous averaged gap.
RunRecord run_accel(const ProblemSpec& spec, const ScheduleConfig& cfg, std::int64_t T,
                    const Vector& x0, std::uint64_t seed, bool assert_lemma = false,
                    const StepObserver& observer = {});

}  // namespace sgdrates
