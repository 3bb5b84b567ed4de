#include "sgdrates/optimizers.hpp"

#include <cmath>
#include <stdexcept>

namespace sgdrates {

namespace {

constexpr double kLemmaTol = 1e-9;
constexpr double kFeasTol = 1e-12;

void check_start(const ProblemSpec& spec, const Vector& x0, std::int64_t T) {
  if (T < 1) throw std::invalid_argument("run requires T >= 1");
  if (x0.size() != spec.dim()) throw std::invalid_argument("x0 dimension mismatch");
  if (!spec.feasible().contains(x0, kFeasTol)) {
    throw std::invalid_argument("x0 is not feasible");
  }
  if (spec.mu() <= 0.0) throw std::invalid_argument("problem is not strongly convex");
}

ScheduleConfig bind_constants(const ProblemSpec& spec, const ScheduleConfig& cfg) {
  ScheduleConfig bound = cfg;
  bound.mu = spec.mu();
  bound.kappa = spec.kappa();
  return bound;
}

}  // namespace

RunRecord run_sgd(const ProblemSpec& spec, const ScheduleConfig& cfg, std::int64_t T,
                  const Vector& x0, std::uint64_t seed, bool assert_lemma,
                  const StepObserver& observer) {
  switch (cfg.kind) {
    case ScheduleKind::Thm1:
    case ScheduleKind::PropOriginal:
    case ScheduleKind::PropInterior:
    case ScheduleKind::GeneralizedR:
      break;
    default:
      throw std::invalid_argument("run_sgd supports thm1, prop_original, prop_interior, "
                                  "generalized_r schedules");
  }
  check_start(spec, x0, T);

  const ScheduleConfig sched = bind_constants(spec, cfg);
  const std::vector<double> gammas = step_sizes(sched, T);
  const std::vector<double> alphas = averaging_factors(sched, T);
  const double L = spec.lipschitz();
  for (std::int64_t t = 1; t <= T; ++t) {
    if (gammas[static_cast<std::size_t>(t - 1)] * L >= 1.0) {
      throw std::invalid_argument("step-size precondition gamma_t * L < 1 fails at t=" +
                                  std::to_string(t));
    }
  }

  const bool averaged = cfg.kind != ScheduleKind::PropInterior;
  const double mu = spec.mu();
  Rng rng(seed);

  RunRecord rec;
  rec.T = T;
  rec.seed = seed;
  rec.gaps.resize(static_cast<std::size_t>(T));
  rec.A.resize(static_cast<std::size_t>(T) + 1);

  Vector x = x0;
  Vector xbar = x0;
  rec.A[0] = (x - spec.x_star()).squaredNorm();

  for (std::int64_t t = 1; t <= T; ++t) {
    const double gamma = gammas[static_cast<std::size_t>(t - 1)];
    const GradientSample g = sample_gradient(spec, x, rng);
    Vector x_next = prox_step(spec.feasible(), x, g.g_noisy, gamma);
    const double a_next = (x_next - spec.x_star()).squaredNorm();

    if (assert_lemma) {
      const double lhs = spec.value(x_next);
      const double rhs = (1.0 - gamma * mu) / (2.0 * gamma) * rec.A[static_cast<std::size_t>(t - 1)] -
                         a_next / (2.0 * gamma) - g.delta.dot(x - spec.x_star()) +
                         gamma / (2.0 * (1.0 - gamma * L)) * g.delta.squaredNorm();
      if (lhs > rhs + kLemmaTol) {
        ++rec.lemma_violations;
      }
    }

    x = std::move(x_next);
    if (averaged) {
      xbar += alphas[static_cast<std::size_t>(t - 1)] * (x - xbar);
    } else {
      xbar = x;
    }

    rec.A[static_cast<std::size_t>(t)] = a_next;
    rec.gaps[static_cast<std::size_t>(t - 1)] = spec.value(xbar);
    if (observer) {
      observer(StepSnapshot{t, x, xbar, nullptr});
    }
  }
  rec.final_gap = rec.gaps.back();
  return rec;
}

RunRecord run_accel(const ProblemSpec& spec, const ScheduleConfig& cfg, std::int64_t T,
                    const Vector& x0, std::uint64_t seed, bool assert_lemma,
                    const StepObserver& observer) {
  if (cfg.kind != ScheduleKind::Thm2) {
    throw std::invalid_argument("run_accel requires the thm2 schedule");
  }
  check_start(spec, x0, T);

  const ScheduleConfig sched = bind_constants(spec, cfg);
  const std::vector<double> gammas = step_sizes(sched, T);
  const std::vector<double> alphas = averaging_factors(sched, T);
  const double mu = spec.mu();
  const double L = spec.lipschitz();
  for (std::int64_t t = 1; t <= T; ++t) {
    const double gamma = gammas[static_cast<std::size_t>(t - 1)];
    const double alpha = alphas[static_cast<std::size_t>(t - 1)];
    if (gamma * (alpha * L + mu) >= 1.0) {
      throw std::invalid_argument("precondition gamma_t (alpha_t L + mu) < 1 fails at t=" +
                                  std::to_string(t));
    }
  }

  Rng rng(seed);

  RunRecord rec;
  rec.T = T;
  rec.seed = seed;
  rec.gaps.resize(static_cast<std::size_t>(T));
  rec.A.resize(static_cast<std::size_t>(T) + 1);

  Vector x = x0;
  Vector xbar = x0;
  rec.A[0] = (x - spec.x_star()).squaredNorm();
  double prev_avg_gap = spec.value(xbar);

  for (std::int64_t t = 1; t <= T; ++t) {
    const double gamma = gammas[static_cast<std::size_t>(t - 1)];
    const double alpha = alphas[static_cast<std::size_t>(t - 1)];
    const Vector y = alpha * x + (1.0 - alpha) * xbar;
    const GradientSample g = sample_gradient(spec, y, rng);
    const Vector shifted = g.g_noisy - mu * (y - x);
    Vector x_next = prox_step(spec.feasible(), x, shifted, gamma);
    const double a_next = (x_next - spec.x_star()).squaredNorm();
    Vector xbar_next = xbar + alpha * (x_next - xbar);
    const double avg_gap = spec.value(xbar_next);

    if (assert_lemma) {
      const double rhs = (1.0 - alpha) * prev_avg_gap +
                         alpha * (1.0 - gamma * mu) / (2.0 * gamma) *
                             rec.A[static_cast<std::size_t>(t - 1)] -
                         alpha / (2.0 * gamma) * a_next - alpha * g.delta.dot(x - spec.x_star()) +
                         alpha * gamma / (2.0 * (1.0 - alpha * gamma * L - gamma * mu)) *
                             g.delta.squaredNorm();
      if (avg_gap > rhs + kLemmaTol) {
        ++rec.lemma_violations;
      }
    }

    x = std::move(x_next);
    xbar = std::move(xbar_next);
    prev_avg_gap = avg_gap;
    rec.A[static_cast<std::size_t>(t)] = a_next;
    rec.gaps[static_cast<std::size_t>(t - 1)] = avg_gap;
    if (observer) {
      observer(StepSnapshot{t, x, xbar, &y});
    }
  }
  rec.final_gap = rec.gaps.back();
  return rec;
}

}  // namespace sgdrates
