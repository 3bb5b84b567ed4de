#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sgdrates/stats.hpp"
#include "sgdrates/verify.hpp"

using namespace sgdrates;

namespace {

bool all_verdicts_pass(const std::vector<Verdict>& vs) {
  for (const Verdict& v : vs) {
    if (!v.pass) return false;
  }
  return true;
}

constexpr BoundSource kSources[] = {BoundSource::Thm1, BoundSource::PropOriginal,
                                    BoundSource::PropInterior, BoundSource::Thm2};

}  // namespace

TEST_CASE("coefficients at fixed points") {
  const RecursionState thm1 = build_sequences(BoundSource::Thm1, 10, 1.0, 2.0, 1.0, 1.0);
  CHECK(thm1.coeffs[3].c == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(thm1.coeffs[3].d == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(thm1.coeffs[3].b == -0.5);
  CHECK(thm1.coeffs[3].w == doctest::Approx(6.0 / 110.0).epsilon(1e-15));

  const RecursionState thm2 = build_sequences(BoundSource::Thm2, 10, 1.0, 2.0, 1.0, 1.0);
  CHECK(thm2.coeffs[1].a == doctest::Approx(2.0 * thm2.lips).epsilon(1e-15));
}

TEST_CASE("sequences vanish at the horizon where the remaining-step factor does") {
  const RecursionState st = build_sequences(BoundSource::Thm1, 50, 1.0, 4.0, 1.0, 1.0);
  CHECK(st.r_hat[50] == 0.0);
  CHECK(st.p_tilde_sq[50] == 0.0);
}

TEST_CASE("structural sequence invariants") {
  for (BoundSource src : kSources) {
    const RecursionState st = build_sequences(src, 100, 1.0, 8.0, 1.0, 1.0);
    for (std::int64_t t = 0; t <= st.T; ++t) {
      const std::size_t i = static_cast<std::size_t>(t);
      CHECK(std::isfinite(st.p_bar[i]));
      CHECK(std::isfinite(st.r_bar[i]));
      CHECK(st.p_tilde_sq[i] >= 0.0);
      CHECK(st.r_tilde_sq[i] >= 0.0);
      CHECK(st.r_hat[i] >= 0.0);
    }
    for (std::int64_t t = 1; t <= st.T; ++t) {
      const RecursionCoeffs& c = st.coeffs[static_cast<std::size_t>(t)];
      CHECK(c.d > 0.0);
      CHECK(c.w >= 0.0);
      CHECK(c.a >= 0.0);
      CHECK(c.c >= 0.0);
      CHECK(c.a_tilde >= 0.0);
    }
  }
}

TEST_CASE("all seven conditions hold for every source on the standard grid") {
  for (BoundSource src : kSources) {
    for (std::int64_t T : {10, 100, 1000}) {
      for (double kappa : {1.0, 2.0, 8.0, 32.0}) {
        if (static_cast<double>(T) <= kappa) continue;
        const RecursionState st = build_sequences(src, T, 1.0, kappa, 1.0, 1.0);
        const std::vector<Verdict> verdicts = check_conditions(st);
        CHECK(verdicts.size() == static_cast<std::size_t>(7 * T));
        CHECK(all_verdicts_pass(verdicts));
        CHECK(terminal_condition_holds(st));
      }
    }
  }
}

TEST_CASE("monotone damping sequence holds by construction") {
  for (BoundSource src : kSources) {
    const RecursionState st = build_sequences(src, 64, 1.0, 2.0, 1.0, 1.0);
    for (const Verdict& v : check_conditions(st)) {
      if (v.condition_id == 5) CHECK(v.pass);
    }
  }
}

TEST_CASE("corrupting the damping sequence is caught by conditions 6/7") {
  RecursionState st = build_sequences(BoundSource::Thm1, 1000, 1.0, 8.0, 1.0, 1.0);
  scale_sequence(st, "r_hat", 0.01);
  const std::vector<Verdict> verdicts = check_conditions(st);
  bool failed67 = false;
  for (const Verdict& v : verdicts) {
    if (!v.pass) {
      CHECK((v.condition_id == 6 || v.condition_id == 7));
      failed67 = true;
    }
  }
  CHECK(failed67);
  CHECK_THROWS_AS(scale_sequence(st, "nope", 0.5), std::invalid_argument);
}

TEST_CASE("summaries aggregate the worst slack per condition") {
  const RecursionState st = build_sequences(BoundSource::PropOriginal, 100, 1.0, 4.0, 1.0, 1.0);
  const std::vector<ConditionSummary> sums = summarize(check_conditions(st));
  REQUIRE(sums.size() == 7);
  for (const ConditionSummary& s : sums) {
    CHECK(s.all_pass);
    CHECK(s.argmin_t >= 1);
    CHECK(s.argmin_t <= 100);
    CHECK(s.min_slack >= -kVerdictTol);
  }
}

TEST_CASE("build_sequences argument validation") {
  CHECK_THROWS_AS(build_sequences(BoundSource::Thm1, 1, 1.0, 1.0, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_sequences(BoundSource::Thm1, 10, 1.0, 0.5, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_sequences(BoundSource::Thm1, 10, 1.0, 1.0, -1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("exact binomial survival function") {
  CHECK(binomial_sf(5, 0, 0.5) == 1.0);
  CHECK(binomial_sf(5, 6, 0.5) == 0.0);
  CHECK(binomial_sf(5, 3, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(binomial_sf(10, 1, 0.1) ==
        doctest::Approx(1.0 - std::pow(0.9, 10)).epsilon(1e-12));
  // Cross-check both summation branches against direct enumeration.
  const auto direct = [](int n, int k, double p) {
    double s = 0.0;
    for (int i = k; i <= n; ++i) {
      double c = 1.0;
      for (int j = 0; j < i; ++j) c *= static_cast<double>(n - j) / static_cast<double>(j + 1);
      s += c * std::pow(p, i) * std::pow(1.0 - p, n - i);
    }
    return s;
  };
  for (int k = 0; k <= 20; ++k) {
    CHECK(binomial_sf(20, k, 0.3) == doctest::Approx(direct(20, k, 0.3)).epsilon(1e-10));
  }
  CHECK(sign_test_pvalue(200, 117) < 0.01);
  CHECK(sign_test_pvalue(200, 116) >= 0.01);
}

TEST_CASE("gaussian tail stays below the mgf bound") {
  const Lemma0TailSpec spec{Lemma0TailSpec::Dist::Gaussian, 1.0, 1e-9};
  const std::vector<ExceedanceRow> rows = mc_tail_check(1000000, {2.0}, spec, 12345, 0);
  REQUIRE(rows.size() == 1);
  // Threshold is sqrt(2 theta) sigma; the true tail there is about 0.0228.
  CHECK(rows[0].fraction > 0.02);
  CHECK(rows[0].fraction < 0.026);
  CHECK(rows[0].fraction <= rows[0].bound);
  CHECK(!rows[0].reject);
}

TEST_CASE("centered exponential sum stays below the mgf bound") {
  const Lemma0TailSpec spec{Lemma0TailSpec::Dist::ShiftedExpSum, 1.0, 0.5};
  const std::vector<ExceedanceRow> rows = mc_tail_check(200000, {0.5, 1.0, 2.0}, spec, 99, 0);
  for (const ExceedanceRow& row : rows) {
    CHECK(row.fraction <= row.bound);
    CHECK(!row.reject);
  }
}

TEST_CASE("optimizer exceedance check accepts a standard configuration") {
  const ProblemSpec problem = make_problem(3, 1.0, 2.0, 11,
                                           FeasibleSet::ball(Vector::Zero(3), 1.0), 1.0, false);
  OptimizerTailSpec spec{problem, ScheduleConfig::thm1(0, 0), 200, Vector()};
  spec.x0 = Vector::Zero(3);
  spec.x0[0] = -1.0;
  const std::vector<ExceedanceRow> rows = mc_tail_check(100, {0.0, 1.0, 2.0}, spec, 7, 0);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].bound == 1.0);
  CHECK(!rows[0].reject);  // theta = 0 is trivially accepted
  for (const ExceedanceRow& row : rows) CHECK(!row.reject);
}

TEST_CASE("tail check argument validation") {
  const Lemma0TailSpec spec{Lemma0TailSpec::Dist::Gaussian, 1.0, 1e-9};
  CHECK_THROWS_AS(mc_tail_check(99, {1.0}, spec, 1, 0), std::invalid_argument);
  const Lemma0TailSpec bad{Lemma0TailSpec::Dist::ShiftedExpSum, 1.0, 0.3};
  CHECK_THROWS_AS(mc_tail_check(100, {1.0}, bad, 1, 0), std::invalid_argument);
}
