#pragma once

#include <cstdint>

#include "sgdrates/domain.hpp"
#include "sgdrates/rng.hpp"

namespace sgdrates {

/// One stochastic gradient draw: the exact gradient, the perturbed gradient
/// returned to the optimizer, and their difference.
struct GradientSample {
  Vector g_true;
  Vector g_noisy;
  Vector delta;
};

/// Strongly convex quadratic f(x) = (x - x*)' H (x - x*) / 2 with
/// H = R diag(spectrum) R', spectrum in [mu, lipschitz], plus a bounded
/// mean-zero noise oracle for the gradient. All constants are exact, so
/// optimality gaps have no oracle error: f(x*) = 0.
class ProblemSpec {
 public:
  Eigen::Index dim() const noexcept { return spectrum_.size(); }
  double mu() const noexcept { return mu_; }
  double lipschitz() const noexcept { return lips_; }
  double kappa() const noexcept { return lips_ / mu_; }
  double noise_radius() const noexcept { return noise_radius_; }
  double diameter() const { return feasible_.diameter(); }
  bool interior() const noexcept { return interior_; }
  std::uint64_t rotation_seed() const noexcept { return rotation_seed_; }

  const Vector& x_star() const noexcept { return x_star_; }
  const FeasibleSet& feasible() const noexcept { return feasible_; }
  const Matrix& rotation() const noexcept { return rotation_; }
  const Vector& spectrum() const noexcept { return spectrum_; }

  /// f(x); nonnegative, zero exactly at x = x*.
  double value(const Vector& x) const;

  /// Exact gradient H (x - x*).
  Vector gradient(const Vector& x) const;

 private:
  friend ProblemSpec make_problem(Eigen::Index d, double mu, double lipschitz,
                                  std::uint64_t rotation_seed, FeasibleSet feasible,
                                  double noise_radius, bool interior);

  ProblemSpec(Vector spectrum, Matrix rotation, Vector x_star, FeasibleSet feasible,
              double noise_radius, bool interior, std::uint64_t rotation_seed, double mu,
              double lips)
      : spectrum_(std::move(spectrum)),
        rotation_(std::move(rotation)),
        x_star_(std::move(x_star)),
        feasible_(std::move(feasible)),
        noise_radius_(noise_radius),
        interior_(interior),
        rotation_seed_(rotation_seed),
        mu_(mu),
        lips_(lips) {}

  Vector spectrum_;
  Matrix rotation_;
  Vector x_star_;
  FeasibleSet feasible_;
  double noise_radius_;
  bool interior_;
  std::uint64_t rotation_seed_;
  double mu_;
  double lips_;
};

/// Builds a problem whose Hessian spectrum interpolates [mu, lipschitz] with
/// both endpoints attained, rotated by a seeded random orthogonal basis.
/// interior=true places x* at the set's deepest point (ball center / box
/// midpoint); otherwise x* sits on the boundary (center + radius*e1 for a
/// ball, the upper corner for a box).
ProblemSpec make_problem(Eigen::Index d, double mu, double lipschitz, std::uint64_t rotation_seed,
                         FeasibleSet feasible, double noise_radius, bool interior);

double eval_f(const ProblemSpec& spec, const Vector& x);
Vector grad_f(const ProblemSpec& spec, const Vector& x);

/// Draws delta uniformly on the sphere of radius u * Q, u ~ Uniform[0, 1]:
/// mean zero by symmetry and ||delta|| <= Q surely.
GradientSample sample_gradient(const ProblemSpec& spec, const Vector& x, Rng& rng);

}  // namespace sgdrates
