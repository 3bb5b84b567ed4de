#pragma once

#include <Eigen/Dense>

namespace sgdrates {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Bounded closed convex feasible region with a closed-form Euclidean
/// projection. Two shapes are supported: a ball (center, radius) and an
/// axis-aligned box (lower, upper).
class FeasibleSet {
 public:
  enum class Kind { Ball, Box };

  static FeasibleSet ball(Vector center, double radius);
  static FeasibleSet box(Vector lower, Vector upper);

  Kind kind() const noexcept { return kind_; }
  Eigen::Index dim() const noexcept { return a_.size(); }

  /// sup ||x - y|| over the set: 2r for a ball, ||upper - lower|| for a box.
  double diameter() const;

  bool contains(const Vector& point, double tol = 1e-12) const;

  const Vector& center() const;  // ball
  double radius() const;         // ball
  const Vector& lower() const;   // box
  const Vector& upper() const;   // box

 private:
  FeasibleSet(Kind kind, Vector a, Vector b, double radius)
      : kind_(kind), a_(std::move(a)), b_(std::move(b)), radius_(radius) {}

  Kind kind_;
  Vector a_;  // center (ball) or lower (box)
  Vector b_;  // unused (ball) or upper (box)
  double radius_ = 0.0;
};

/// Euclidean projection onto the set. Idempotent: points already inside (up
/// to a few ulp on the ball boundary) are returned unchanged.
Vector project(const FeasibleSet& set, const Vector& point);

/// Exact minimizer of <g, x> + ||x - x_prev||^2 / (2 gamma) over the set,
/// i.e. project(set, x_prev - gamma * g). Requires gamma > 0.
Vector prox_step(const FeasibleSet& set, const Vector& x_prev, const Vector& g, double gamma);

}  // namespace sgdrates
