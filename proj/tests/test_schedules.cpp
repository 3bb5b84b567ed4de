#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "sgdrates/rng.hpp"
#include "sgdrates/schedules.hpp"

using namespace sgdrates;

TEST_CASE("step sizes and averaging factors at fixed points") {
  const ScheduleConfig thm1 = ScheduleConfig::thm1(1.0, 2.0);
  CHECK(averaging_factor(thm1, 1) == 1.0);
  CHECK(step_size(thm1, 1) == doctest::Approx(2.0 / 5.0).epsilon(1e-15));
  CHECK(step_size(thm1, 6) == doctest::Approx(0.2).epsilon(1e-15));

  const ScheduleConfig thm2 = ScheduleConfig::thm2(1.0, 2.0);
  CHECK(averaging_factor(thm2, 3) == 0.5);
  CHECK(step_size(thm2, 3) == doctest::Approx(0.3).epsilon(1e-15));

  const ScheduleConfig prop = ScheduleConfig::prop_original(2.0, 3.0);
  CHECK(averaging_factor(prop, 4) == 0.25);
  CHECK(step_size(prop, 4) == doctest::Approx(1.0 / (2.0 * 7.0)).epsilon(1e-15));

  CHECK_THROWS_AS(averaging_factor(thm1, 0), std::invalid_argument);
  CHECK_THROWS_AS(step_size(thm1, 0), std::invalid_argument);
  CHECK_THROWS_AS(step_size(ScheduleConfig::exponential(0.5), 1), std::invalid_argument);
  CHECK_THROWS_AS(weights(ScheduleConfig::exponential(1.5), 4), std::invalid_argument);
  CHECK_THROWS_AS(weights(ScheduleConfig::generalized(1.0, 1.0, -1.0), 4),
                  std::invalid_argument);
}

TEST_CASE("closed-form weights") {
  const std::vector<double> w = weights(ScheduleConfig::thm1(1.0, 1.0), 3);
  CHECK(w[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  CHECK(w[2] == doctest::Approx(3.0 / 6.0).epsilon(1e-15));

  for (double x : weights(ScheduleConfig::prop_original(1.0, 1.0), 4)) {
    CHECK(x == 0.25);
  }

  const std::vector<double> gen0 = weights(ScheduleConfig::generalized(1.0, 1.0, 0.0), 5);
  for (double x : gen0) CHECK(x == doctest::Approx(0.2).epsilon(1e-15));

  const std::vector<double> last = weights(ScheduleConfig::prop_interior(1.0, 1.0), 4);
  CHECK(last == std::vector<double>{0.0, 0.0, 0.0, 1.0});
}

TEST_CASE("weights are a probability vector for every kind") {
  const std::vector<ScheduleConfig> cfgs = {
      ScheduleConfig::thm1(1.0, 4.0),        ScheduleConfig::prop_original(1.0, 4.0),
      ScheduleConfig::prop_interior(1.0, 4.0), ScheduleConfig::thm2(1.0, 4.0),
      ScheduleConfig::generalized(1.0, 4.0, 2.0), ScheduleConfig::exponential(0.3)};
  for (const ScheduleConfig& cfg : cfgs) {
    for (std::int64_t T : {1, 2, 7, 100}) {
      const std::vector<double> w = weights(cfg, T);
      REQUIRE(w.size() == static_cast<std::size_t>(T));
      double sum = 0.0;
      for (double x : w) {
        CHECK(x >= 0.0);
        sum += x;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("running average reproduces the explicit weighted sum") {
  const std::vector<ScheduleConfig> cfgs = {
      ScheduleConfig::thm1(1.0, 2.0),        ScheduleConfig::prop_original(1.0, 2.0),
      ScheduleConfig::prop_interior(1.0, 2.0), ScheduleConfig::thm2(1.0, 2.0),
      ScheduleConfig::generalized(1.0, 2.0, 2.0), ScheduleConfig::exponential(0.4)};
  Rng rng(77);
  for (const ScheduleConfig& cfg : cfgs) {
    for (std::int64_t T : {1LL, 13LL, 1000LL, 10000LL}) {
      std::vector<double> xs(static_cast<std::size_t>(T));
      for (double& x : xs) x = rng.gaussian();
      const std::vector<double> alphas = averaging_factors(cfg, T);
      double avg = 0.0;  // any start works: alpha_1 = 1 for all kinds
      for (std::int64_t t = 1; t <= T; ++t) {
        avg += alphas[static_cast<std::size_t>(t - 1)] *
               (xs[static_cast<std::size_t>(t - 1)] - avg);
      }
      const std::vector<double> w = weights(cfg, T);
      double explicit_sum = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) explicit_sum += w[i] * xs[i];
      CHECK(avg == doctest::Approx(explicit_sum).epsilon(1e-10));
    }
  }
}

TEST_CASE("averaged variance closed forms") {
  CHECK(averaged_variance(ScheduleConfig::thm1(1.0, 1.0), 10) ==
        doctest::Approx(42.0 / 330.0).epsilon(1e-14));
  CHECK(averaged_variance(ScheduleConfig::prop_original(1.0, 1.0), 10) ==
        doctest::Approx(0.1).epsilon(1e-14));

  const double exact = averaged_variance(ScheduleConfig::generalized(1.0, 1.0, 2.0), 1000);
  const double approx = generalized_variance_approx(2.0, 1000);
  CHECK(approx == doctest::Approx(9.0 / 5000.0).epsilon(1e-15));
  CHECK(std::abs(exact - approx) <= 0.02 * approx);

  // Exponential: exact sum vs geometric-series closed form.
  const double a = 0.3;
  const std::int64_t T = 50;
  const double tail = std::pow(1.0 - a, 2.0 * static_cast<double>(T - 1));
  const double closed = tail + a / (2.0 - a) * (1.0 - tail);
  CHECK(averaged_variance(ScheduleConfig::exponential(a), T) ==
        doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("effective tail samples") {
  const double ratio =
      effective_tail_samples(ScheduleConfig::thm1(1.0, 1.0), 100000) / 100000.0;
  CHECK(ratio == doctest::Approx(0.75).epsilon(1e-4));
  CHECK(effective_tail_samples(ScheduleConfig::exponential(0.5), 1000) ==
        doctest::Approx(3.0).epsilon(0.01));
  CHECK(effective_tail_samples(ScheduleConfig::prop_original(1.0, 1.0), 100) ==
        doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("partial harmonic sums") {
  CHECK(log_tilde(10, 10) == 0.0);
  CHECK(log_tilde(4, 1) == doctest::Approx(13.0 / 12.0).epsilon(1e-15));
  CHECK(log_tilde(100, 1) <= std::log(100.0));
  for (std::int64_t t = 1; t <= 50; ++t) {
    CHECK(log_tilde(50, t) <= std::log(50.0 / static_cast<double>(t)) + 1e-15);
  }
  CHECK_THROWS_AS(log_tilde(5, 6), std::invalid_argument);
  CHECK_THROWS_AS(log_tilde(5, -1), std::invalid_argument);
}

TEST_CASE("telescoping comparison for the linear-weight schedule") {
  for (double kappa : {1.0, 2.0, 8.0}) {
    const double mu = 1.0;
    const ScheduleConfig cfg = ScheduleConfig::thm1(mu, kappa);
    const std::int64_t T = 100;
    const std::vector<double> w = weights(cfg, T);
    double prev_w = 0.0, prev_gamma = 1.0;
    for (std::int64_t t = 1; t <= T; ++t) {
      const double wt = w[static_cast<std::size_t>(t - 1)];
      const double gt = step_size(cfg, t);
      const double lhs = wt * (1.0 - gt * mu) / (2.0 * gt) - prev_w / (2.0 * prev_gamma);
      const double rhs = wt * (mu * kappa) / (2.0 * static_cast<double>(t));
      CHECK(lhs <= rhs + 1e-15);
      prev_w = wt;
      prev_gamma = gt;
    }
  }
}

TEST_CASE("step-size preconditions hold for every horizon") {
  for (double kappa : {1.0, 2.0, 32.0, 1000.0}) {
    const double mu = 1.0;
    const double L = mu * kappa;
    for (ScheduleKind kind : {ScheduleKind::Thm1, ScheduleKind::PropOriginal,
                              ScheduleKind::PropInterior, ScheduleKind::GeneralizedR}) {
      ScheduleConfig cfg{kind, mu, kappa, 1.0, 0.5};
      for (std::int64_t t = 1; t <= 2000; ++t) {
        CHECK(step_size(cfg, t) * L < 1.0);
      }
    }
    const ScheduleConfig accel = ScheduleConfig::thm2(mu, kappa);
    for (std::int64_t t = 1; t <= 2000; ++t) {
      CHECK(step_size(accel, t) * (averaging_factor(accel, t) * L + mu) < 1.0);
    }
  }
}
