#include "sgdrates/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sgdrates/parallel.hpp"
#include "sgdrates/stats.hpp"

namespace sgdrates {

namespace {

constexpr std::int64_t kSeedStride = 1'000'000;

Vector to_vector(const std::vector<double>& xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) v[static_cast<Eigen::Index>(i)] = xs[i];
  return v;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (problem.d < 1) throw std::invalid_argument("problem.d must be >= 1");
  if (!(problem.mu > 0.0) || !(problem.lips >= problem.mu)) {
    throw std::invalid_argument("problem requires 0 < mu <= L");
  }
  if (!(problem.noise >= 0.0)) throw std::invalid_argument("problem.Q must be >= 0");
  if (T_grid.empty()) throw std::invalid_argument("T_grid must be nonempty");
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (T_grid[i] < 1) throw std::invalid_argument("T_grid entries must be >= 1");
    if (i > 0 && T_grid[i] <= T_grid[i - 1]) {
      throw std::invalid_argument("T_grid must be strictly increasing");
    }
  }
  if (trials_per_T < 1) throw std::invalid_argument("trials_per_T must be >= 1");
  if (trials_per_T >= kSeedStride) {
    throw std::invalid_argument("trials_per_T must be below the per-T seed stride (10^6)");
  }
  for (double th : theta_grid) {
    if (!(th >= 0.0)) throw std::invalid_argument("theta_grid entries must be >= 0");
  }
  if (schedule_kind == ScheduleKind::Exponential) {
    throw std::invalid_argument("schedule.kind exponential is a weighting scheme only; "
                                "it cannot be run");
  }
  if (schedule_kind == ScheduleKind::GeneralizedR && !(schedule_r >= 0.0)) {
    throw std::invalid_argument("schedule.r must be >= 0");
  }
  if (schedule_kind == ScheduleKind::PropInterior && !problem.interior) {
    throw std::invalid_argument("prop_interior guarantees need problem.interior = true");
  }
}

FeasibleSet to_feasible_set(const FeasibleConfig& cfg, std::int64_t d) {
  const auto dim = static_cast<Eigen::Index>(d);
  if (cfg.kind == "ball") {
    Vector center = cfg.center.empty() ? Vector(Vector::Zero(dim)) : to_vector(cfg.center);
    if (center.size() != dim) throw std::invalid_argument("feasible.center dimension mismatch");
    return FeasibleSet::ball(std::move(center), cfg.radius);
  }
  if (cfg.kind == "box") {
    Vector lower = to_vector(cfg.lower);
    Vector upper = to_vector(cfg.upper);
    if (lower.size() != dim || upper.size() != dim) {
      throw std::invalid_argument("feasible.lower/upper dimension mismatch");
    }
    return FeasibleSet::box(std::move(lower), std::move(upper));
  }
  throw std::invalid_argument("feasible.kind must be \"ball\" or \"box\"");
}

ProblemSpec to_problem(const ProblemConfig& cfg) {
  return make_problem(static_cast<Eigen::Index>(cfg.d), cfg.mu, cfg.lips, cfg.rotation_seed,
                      to_feasible_set(cfg.feasible, cfg.d), cfg.noise, cfg.interior);
}

ScheduleConfig to_schedule(const ExperimentConfig& cfg, const ProblemSpec& problem) {
  ScheduleConfig sched;
  sched.kind = cfg.schedule_kind;
  sched.mu = problem.mu();
  sched.kappa = problem.kappa();
  sched.r = cfg.schedule_r;
  sched.decay = cfg.schedule_decay;
  return sched;
}

Vector default_x0(const ProblemSpec& problem) {
  const FeasibleSet& set = problem.feasible();
  if (set.kind() == FeasibleSet::Kind::Ball) {
    Vector x0 = set.center();
    x0[0] -= set.radius();
    return x0;
  }
  return set.lower();
}

Vector initial_point(const ProblemConfig& cfg, const ProblemSpec& problem) {
  if (cfg.x0.empty()) return default_x0(problem);
  Vector x0 = to_vector(cfg.x0);
  if (x0.size() != problem.dim()) throw std::invalid_argument("x0 dimension mismatch");
  return x0;
}

SlopeFit fit_loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("slope fit needs at least two (x, y) pairs");
  }
  const std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("slope fit needs positive data");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  const double mx = mean(lx);
  const double my = mean(ly);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct x values");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  if (n > 2) {
    const double intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ly[i] - intercept - fit.slope * lx[i];
      rss += r * r;
    }
    fit.std_error = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

SweepResult run_sweep(const ExperimentConfig& cfg, int jobs) {
  cfg.validate();
  const ProblemSpec problem = to_problem(cfg.problem);
  const ScheduleConfig sched = to_schedule(cfg, problem);
  const Vector x0 = initial_point(cfg.problem, problem);
  const auto source = bound_source_for(cfg.schedule_kind);
  const bool accelerated = cfg.schedule_kind == ScheduleKind::Thm2;

  SweepResult result;
  result.rows.resize(cfg.T_grid.size());

  for (std::size_t i = 0; i < cfg.T_grid.size(); ++i) {
    const std::int64_t T = cfg.T_grid[i];
    SweepRow& row = result.rows[i];
    row.T = T;
    row.in_regime = static_cast<double>(T) > problem.kappa();
    row.gaps.resize(static_cast<std::size_t>(cfg.trials_per_T));
    parallel_for(cfg.trials_per_T, jobs, [&](std::int64_t j) {
      const std::uint64_t seed =
          cfg.base_seed + static_cast<std::uint64_t>(i) * kSeedStride + static_cast<std::uint64_t>(j);
      const RunRecord rec = accelerated ? run_accel(problem, sched, T, x0, seed)
                                        : run_sgd(problem, sched, T, x0, seed);
      row.gaps[static_cast<std::size_t>(j)] = rec.final_gap;
    });
    row.mean_gap = mean(row.gaps);
    row.median_gap = median(row.gaps);
    std::sort(row.gaps.begin(), row.gaps.end());
    row.empirical_quantiles.reserve(cfg.theta_grid.size());
    for (double theta : cfg.theta_grid) {
      row.empirical_quantiles.push_back(upper_quantile(row.gaps, std::exp(-theta)));
    }
    if (source) {
      const BoundTriple bt = bound_for(*source, problem.diameter(), problem.lipschitz(),
                                       problem.noise_radius(), problem.kappa(), T);
      row.bound_quantiles.reserve(cfg.theta_grid.size());
      for (double theta : cfg.theta_grid) {
        row.bound_quantiles.push_back(quantile(bt, theta));
      }
    }
  }

  // Slope over the theorem regime with margin.
  std::vector<double> ts, meds;
  for (const SweepRow& row : result.rows) {
    if (static_cast<double>(row.T) > 4.0 * problem.kappa() && row.median_gap > 0.0) {
      ts.push_back(static_cast<double>(row.T));
      meds.push_back(row.median_gap);
    }
  }
  if (ts.size() >= 2) {
    const SlopeFit fit = fit_loglog_slope(ts, meds);
    result.fitted_slope = fit.slope;
    result.slope_std_error = fit.std_error;
  } else {
    result.fitted_slope = std::numeric_limits<double>::quiet_NaN();
    result.slope_std_error = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

std::vector<CompareRow> compare_to_bound(const SweepResult& result, const ExperimentConfig& cfg,
                                         BoundSource source) {
  const ProblemSpec problem = to_problem(cfg.problem);
  std::vector<CompareRow> table;
  table.reserve(result.rows.size() * cfg.theta_grid.size());
  for (const SweepRow& row : result.rows) {
    const BoundTriple bt = bound_for(source, problem.diameter(), problem.lipschitz(),
                                     problem.noise_radius(), problem.kappa(), row.T);
    for (std::size_t k = 0; k < cfg.theta_grid.size(); ++k) {
      CompareRow cr;
      cr.T = row.T;
      cr.theta = cfg.theta_grid[k];
      cr.bound_quantile = quantile(bt, cr.theta);
      cr.empirical_quantile = row.empirical_quantiles[k];
      cr.exp_neg_theta = std::exp(-cr.theta);
      std::int64_t count = 0;
      for (double g : row.gaps) {
        if (g >= cr.bound_quantile) ++count;
      }
      cr.exceedance_frac = static_cast<double>(count) / static_cast<double>(row.gaps.size());
      cr.violation = cr.empirical_quantile > cr.bound_quantile;
      table.push_back(cr);
    }
  }
  return table;
}

}  // namespace sgdrates
