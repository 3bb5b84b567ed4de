#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sgdrates/optimizers.hpp"

using namespace sgdrates;

namespace {

ProblemSpec ball_problem(Eigen::Index d, double mu, double L, double Q, bool interior,
                         double radius = 1.0, std::uint64_t seed = 7) {
  return make_problem(d, mu, L, seed, FeasibleSet::ball(Vector::Zero(d), radius), Q, interior);
}

Vector start_opposite(const ProblemSpec& spec) {
  Vector x0 = spec.feasible().center();
  x0[0] -= spec.feasible().radius();
  return x0;
}

}  // namespace

TEST_CASE("starting at the optimum with no noise is a fixed point") {
  const ProblemSpec spec = ball_problem(3, 1.0, 4.0, 0.0, false);
  const Vector x0 = spec.x_star();
  const RunRecord sgd = run_sgd(spec, ScheduleConfig::thm1(0, 0), 50, x0, 1, true);
  const RunRecord acc = run_accel(spec, ScheduleConfig::thm2(0, 0), 50, x0, 1, true);
  for (const RunRecord* rec : {&sgd, &acc}) {
    CHECK(rec->lemma_violations == 0);
    for (double g : rec->gaps) CHECK(g == 0.0);
    for (double a : rec->A) CHECK(a == 0.0);
  }
}

TEST_CASE("first-step averaging collapses to the first iterate") {
  const ProblemSpec spec = ball_problem(2, 1.0, 2.0, 0.5, true);
  const Vector x0 = start_opposite(spec);
  Vector x1, xbar1;
  const auto observer = [&](const StepSnapshot& s) {
    if (s.t == 1) {
      x1 = s.x;
      xbar1 = s.xbar;
    }
  };
  run_sgd(spec, ScheduleConfig::thm1(0, 0), 1, x0, 3, false, observer);
  CHECK(x1 == xbar1);
}

TEST_CASE("noise-free weighted-average run meets the deterministic gap bound") {
  const ProblemSpec spec = make_problem(1, 1.0, 1.0, 5,
                                        FeasibleSet::ball(Vector::Zero(1), 1.0), 0.0, false);
  const Vector x0 = start_opposite(spec);  // A_0 = D^2
  for (std::int64_t T : {8, 64, 512}) {
    const RunRecord rec = run_sgd(spec, ScheduleConfig::thm1(0, 0), T, x0, 1, true);
    CHECK(rec.lemma_violations == 0);
    const double bound = spec.diameter() * spec.diameter() * spec.lipschitz() /
                         static_cast<double>(T);
    CHECK(rec.final_gap <= bound);
    for (std::size_t i = 1; i < rec.gaps.size(); ++i) {
      CHECK(rec.gaps[i] <= rec.gaps[i - 1] + 1e-15);
    }
  }
}

TEST_CASE("noise-free accelerated run meets the quadratic-rate bound") {
  const ProblemSpec spec = make_problem(1, 4.0, 4.0, 5,
                                        FeasibleSet::ball(Vector::Zero(1), 1.0), 0.0, false);
  const Vector x0 = start_opposite(spec);
  for (std::int64_t T : {8, 32, 128}) {
    const RunRecord rec = run_accel(spec, ScheduleConfig::thm2(0, 0), T, x0, 1, true);
    CHECK(rec.lemma_violations == 0);
    const double Td = static_cast<double>(T);
    CHECK(rec.final_gap <= 2.0 * spec.diameter() * spec.diameter() * spec.lipschitz() / (Td * Td));
  }
}

TEST_CASE("runs are bit-reproducible per seed") {
  const ProblemSpec spec = ball_problem(4, 1.0, 4.0, 1.0, false);
  const Vector x0 = start_opposite(spec);
  const RunRecord a = run_sgd(spec, ScheduleConfig::thm1(0, 0), 200, x0, 42, true);
  const RunRecord b = run_sgd(spec, ScheduleConfig::thm1(0, 0), 200, x0, 42, true);
  CHECK(a.final_gap == b.final_gap);
  CHECK(a.gaps == b.gaps);
  CHECK(a.A == b.A);
  const RunRecord c = run_accel(spec, ScheduleConfig::thm2(0, 0), 200, x0, 42, true);
  const RunRecord d = run_accel(spec, ScheduleConfig::thm2(0, 0), 200, x0, 42, true);
  CHECK(c.gaps == d.gaps);
}

TEST_CASE("iterates, averages, and extrapolation points stay feasible") {
  const ProblemSpec spec = ball_problem(3, 1.0, 8.0, 2.0, false);
  const Vector x0 = start_opposite(spec);
  const auto check_feasible = [&](const StepSnapshot& s) {
    CHECK(spec.feasible().contains(s.x, 1e-12));
    CHECK(spec.feasible().contains(s.xbar, 1e-12));
    if (s.y != nullptr) CHECK(spec.feasible().contains(*s.y, 1e-12));
  };
  run_sgd(spec, ScheduleConfig::thm1(0, 0), 500, x0, 9, false, check_feasible);
  run_accel(spec, ScheduleConfig::thm2(0, 0), 500, x0, 9, false, check_feasible);
}

TEST_CASE("recursive average equals the explicit weighted sum of iterates") {
  const ProblemSpec spec = ball_problem(3, 1.0, 4.0, 1.0, false);
  const Vector x0 = start_opposite(spec);
  const std::int64_t T = 300;
  for (ScheduleKind kind : {ScheduleKind::Thm1, ScheduleKind::PropOriginal, ScheduleKind::Thm2}) {
    ScheduleConfig cfg{kind, 0, 0, 0.0, 0.5};
    std::vector<Vector> iterates;
    Vector final_avg;
    const auto observer = [&](const StepSnapshot& s) {
      iterates.push_back(s.x);
      if (s.t == T) final_avg = s.xbar;
    };
    if (kind == ScheduleKind::Thm2) {
      run_accel(spec, cfg, T, x0, 5, false, observer);
    } else {
      run_sgd(spec, cfg, T, x0, 5, false, observer);
    }
    ScheduleConfig bound = cfg;
    bound.mu = spec.mu();
    bound.kappa = spec.kappa();
    const std::vector<double> w = weights(bound, T);
    Vector weighted = Vector::Zero(spec.dim());
    for (std::size_t i = 0; i < w.size(); ++i) weighted += w[i] * iterates[i];
    CHECK((weighted - final_avg).norm() <= 1e-8 * std::max(1.0, final_avg.norm()));
  }
}

TEST_CASE("non-averaged mode reports the last iterate") {
  const ProblemSpec spec = ball_problem(2, 1.0, 2.0, 0.5, true);
  const Vector x0 = start_opposite(spec);
  Vector last_x, last_xbar;
  const auto observer = [&](const StepSnapshot& s) {
    last_x = s.x;
    last_xbar = s.xbar;
  };
  const RunRecord rec =
      run_sgd(spec, ScheduleConfig::prop_interior(0, 0), 100, x0, 4, false, observer);
  CHECK(last_x == last_xbar);
  CHECK(rec.final_gap == eval_f(spec, last_x));
}

TEST_CASE("per-step descent inequalities hold along noisy paths") {
  const ProblemSpec spec = ball_problem(5, 1.0, 4.0, 1.0, false);
  const Vector x0 = start_opposite(spec);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (ScheduleKind kind :
         {ScheduleKind::Thm1, ScheduleKind::PropOriginal, ScheduleKind::PropInterior}) {
      ScheduleConfig cfg{kind, 0, 0, 0.0, 0.5};
      CHECK(run_sgd(spec, cfg, 1000, x0, seed, true).lemma_violations == 0);
    }
    CHECK(run_accel(spec, ScheduleConfig::thm2(0, 0), 1000, x0, seed, true).lemma_violations == 0);
  }
}

TEST_CASE("run records start within the domain diameter") {
  const ProblemSpec spec = ball_problem(3, 1.0, 4.0, 1.0, false);
  const Vector x0 = start_opposite(spec);
  const RunRecord rec = run_sgd(spec, ScheduleConfig::thm1(0, 0), 10, x0, 1);
  CHECK(rec.A[0] <= spec.diameter() * spec.diameter() * (1.0 + 1e-12));
  for (double g : rec.gaps) CHECK(g >= -1e-12);
}

TEST_CASE("argument validation") {
  const ProblemSpec spec = ball_problem(2, 1.0, 2.0, 0.0, true);
  Vector outside(2);
  outside << 5.0, 0.0;
  CHECK_THROWS_AS(run_sgd(spec, ScheduleConfig::thm1(0, 0), 10, outside, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_sgd(spec, ScheduleConfig::thm2(0, 0), 10, spec.x_star(), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_sgd(spec, ScheduleConfig::exponential(0.5), 10, spec.x_star(), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_accel(spec, ScheduleConfig::thm1(0, 0), 10, spec.x_star(), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_sgd(spec, ScheduleConfig::thm1(0, 0), 0, spec.x_star(), 1),
                  std::invalid_argument);
}
