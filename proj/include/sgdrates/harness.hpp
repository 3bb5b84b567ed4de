#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sgdrates/bounds.hpp"
#include "sgdrates/optimizers.hpp"

namespace sgdrates {

/// Declarative feasible-set description, as it appears in config files.
struct FeasibleConfig {
  std::string kind = "ball";  // "ball" | "box"
  double radius = 1.0;
  std::vector<double> center;  // optional; origin when empty
  std::vector<double> lower, upper;
};

struct ProblemConfig {
  std::int64_t d = 2;
  double mu = 1.0;
  double lips = 1.0;
  std::uint64_t rotation_seed = 0;
  double noise = 0.0;
  bool interior = false;
  FeasibleConfig feasible;
  std::vector<double> x0;  // optional start point; default is used when empty
};

struct ExperimentConfig {
  ProblemConfig problem;
  ScheduleKind schedule_kind = ScheduleKind::Thm1;
  double schedule_r = 0.0;
  double schedule_decay = 0.5;
  std::vector<std::int64_t> T_grid;
  std::int64_t trials_per_T = 1;
  std::vector<double> theta_grid;
  std::uint64_t base_seed = 0;
  std::string output_path = "results/run";

  void validate() const;  // throws std::invalid_argument with the field name
};

FeasibleSet to_feasible_set(const FeasibleConfig& cfg, std::int64_t d);
ProblemSpec to_problem(const ProblemConfig& cfg);

/// Schedule bound to the problem's mu and kappa, so the two cannot disagree.
ScheduleConfig to_schedule(const ExperimentConfig& cfg, const ProblemSpec& problem);

/// Deterministic start point: the ball point diametrically opposite the
/// boundary optimum (center - radius e1), or the box lower corner.
Vector default_x0(const ProblemSpec& problem);
Vector initial_point(const ProblemConfig& cfg, const ProblemSpec& problem);

struct SweepRow {
  std::int64_t T = 0;
  double mean_gap = 0.0;
  double median_gap = 0.0;
  std::vector<double> empirical_quantiles;  // one per theta
  std::vector<double> bound_quantiles;      // empty when the schedule has no triple
  std::vector<double> gaps;                 // final gaps, sorted ascending
  bool in_regime = false;                   // T > kappa
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double fitted_slope = 0.0;
  double slope_std_error = 0.0;
};

/// Runs trials_per_T seeded trials per grid point (trial j of grid index i
/// uses seed base_seed + i * 10^6 + j), gathers gap statistics and fits the
/// log-log slope of the median gap over the rows with T > 4 kappa.
SweepResult run_sweep(const ExperimentConfig& cfg, int jobs = 0);

struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
};

/// Least-squares slope of log(y) against log(x).
SlopeFit fit_loglog_slope(std::span<const double> xs, std::span<const double> ys);

struct CompareRow {
  std::int64_t T = 0;
  double theta = 0.0;
  double empirical_quantile = 0.0;
  double bound_quantile = 0.0;
  double exceedance_frac = 0.0;
  double exp_neg_theta = 0.0;
  bool violation = false;  // empirical quantile above the bound quantile
};

/// Per-(T, theta) comparison of the sweep's empirical gap quantiles and
/// exceedance fractions against the closed-form bound. Empty theta grid
/// yields an empty table (the sweep rows already carry the gap statistics).
std::vector<CompareRow> compare_to_bound(const SweepResult& result, const ExperimentConfig& cfg,
                                         BoundSource source);

}  // namespace sgdrates
