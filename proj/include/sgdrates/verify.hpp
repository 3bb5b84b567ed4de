#pragma once

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "sgdrates/bounds.hpp"
#include "sgdrates/optimizers.hpp"

namespace sgdrates {

/// Per-iteration coefficients of the squared-distance recursion
///   A_t <= d_t (a_t A_{t-1} + 2 b_t B_t + c_t C_t)
/// and of the weighted gap terms X_t = w_t (a~_t A_{t-1} + 2 b~_t B_t + c~_t C_t).
struct RecursionCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double w = 0.0;
  double a_tilde = 0.0;
  double b_tilde = 0.0;
  double c_tilde = 0.0;
};

/// The five concentration sequences driving each guarantee's proof, indexed
/// t = 0..T, plus the per-t coefficients (valid at indices 1..T).
struct RecursionState {
  BoundSource source = BoundSource::Thm1;
  std::int64_t T = 0;
  double mu = 1.0;
  double lips = 1.0;
  double kappa = 1.0;
  double noise = 1.0;
  double diam = 1.0;
  std::vector<double> p_bar, r_bar, p_tilde_sq, r_tilde_sq, r_hat;
  std::vector<RecursionCoeffs> coeffs;
  /// The deterministic terminal term X_{T+1} (a bound on it, for sources
  /// where it depends on A_T).
  double x_terminal = 0.0;
};

/// Outcome of one inequality at one step. pass holds iff
/// lhs <= rhs + 1e-12 * max(1, |rhs|); slack = rhs - lhs.
struct Verdict {
  int condition_id = 0;
  std::int64_t t = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
};

constexpr double kVerdictTol = 1e-12;

/// Populates the sequences and coefficients for one guarantee. Requires
/// T >= 2 and kappa = L/mu >= 1.
RecursionState build_sequences(BoundSource source, std::int64_t T, double mu, double lips,
                               double noise, double diam);

/// Evaluates the seven descent conditions for every t in [T]:
///   1. a d Pbar_t + w a~                                    <= Pbar_{t-1}
///   2. Rbar_t + w c~ + c d Pbar_t                           <= Rbar_{t-1}
///   3. a d Pt2_t + 4 (w b~ + b d Pbar_t)^2                  <= Pt2_{t-1}
///   4. Rt2_t + c d Pt2_t                                    <= Rt2_{t-1}
///   5. Rhat_t                                               <= Rhat_{t-1}
///   6. a d Pt2_t Rhat_t + 4 b d (w b~ + b d Pbar_t) Pt2_t   <= Pt2_{t-1} Rhat_{t-1}
///   7. as 6 with Rhat^2 and the extra 2 b^2 d^2 Pt2_t^2 term <= Pt2_{t-1} Rhat_{t-1}^2
/// Failures are reported in the verdicts, never thrown.
std::vector<Verdict> check_conditions(const RecursionState& state);

/// Base case: the terminal term is absorbed by the time-T sequence values,
/// X_{T+1} <= Pbar_T D^2 + Rbar_T (same tolerance as the verdicts).
bool terminal_condition_holds(const RecursionState& state);

/// Multiplies one sequence ("p_bar", "r_bar", "p_tilde_sq", "r_tilde_sq",
/// "r_hat") by `factor`; used as a negative control for the checker.
void scale_sequence(RecursionState& state, std::string_view name, double factor);

struct ConditionSummary {
  int condition_id = 0;
  bool all_pass = false;
  double min_slack = 0.0;
  std::int64_t argmin_t = 0;
};

std::vector<ConditionSummary> summarize(const std::vector<Verdict>& verdicts);

// --- Monte Carlo tail checks ---------------------------------------------

/// Repeated seeded optimization runs; thresholds are quantile(theta) of the
/// schedule's bound triple evaluated at the problem's constants.
struct OptimizerTailSpec {
  ProblemSpec problem;
  ScheduleConfig schedule;
  std::int64_t T = 0;
  Vector x0;
};

/// Direct sampling of a synthetic variable matching the mgf hypothesis
/// log E exp(uZ) <= sigma^2 u^2 / (2 (1 - u bias)): a centered Gaussian, or
/// a centered sum of sigma^2/bias^2 exponentials scaled by `bias`.
struct Lemma0TailSpec {
  enum class Dist { Gaussian, ShiftedExpSum };
  Dist dist = Dist::Gaussian;
  double sigma = 1.0;
  double bias = 1e-9;
};

using TailRunner = std::variant<OptimizerTailSpec, Lemma0TailSpec>;

struct ExceedanceRow {
  double theta = 0.0;
  double threshold = 0.0;
  std::int64_t count = 0;
  std::int64_t trials = 0;
  double fraction = 0.0;
  double bound = 0.0;   // exp(-theta)
  double p_value = 1.0; // one-sided exact binomial, H0: exceedance prob <= bound
  bool reject = false;  // p_value < 0.01
};

constexpr double kTailTestLevel = 0.01;

/// Runs `trials` independent draws/optimizations (trial j uses seed
/// base_seed + j) and tabulates, per theta, the fraction of outcomes at or
/// above the theta-threshold against exp(-theta). Requires trials >= 100.
std::vector<ExceedanceRow> mc_tail_check(std::int64_t trials, const std::vector<double>& thetas,
                                         const TailRunner& runner, std::uint64_t base_seed,
                                         int jobs = 0);

}  // namespace sgdrates
