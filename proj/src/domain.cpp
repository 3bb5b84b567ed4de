#include "sgdrates/domain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sgdrates {

namespace {

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + " has non-finite entries");
  }
}

void require_same_dim(const FeasibleSet& set, const Vector& point) {
  if (point.size() != set.dim()) {
    throw std::invalid_argument("dimension mismatch: set is " + std::to_string(set.dim()) +
                                "-dimensional, point is " + std::to_string(point.size()));
  }
}

}  // namespace

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  require_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ball radius must be positive and finite");
  }
  return FeasibleSet(Kind::Ball, std::move(center), Vector(), radius);
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  require_finite(lower, "box lower");
  require_finite(upper, "box upper");
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("box lower/upper dimension mismatch");
  }
  if ((lower.array() > upper.array()).any()) {
    throw std::invalid_argument("box requires lower <= upper elementwise");
  }
  return FeasibleSet(Kind::Box, std::move(lower), std::move(upper), 0.0);
}

double FeasibleSet::diameter() const {
  return kind_ == Kind::Ball ? 2.0 * radius_ : (b_ - a_).norm();
}

bool FeasibleSet::contains(const Vector& point, double tol) const {
  require_same_dim(*this, point);
  if (kind_ == Kind::Ball) {
    return (point - a_).norm() <= radius_ + tol;
  }
  return (point.array() >= a_.array() - tol).all() && (point.array() <= b_.array() + tol).all();
}

const Vector& FeasibleSet::center() const {
  if (kind_ != Kind::Ball) throw std::logic_error("center() on non-ball set");
  return a_;
}

double FeasibleSet::radius() const {
  if (kind_ != Kind::Ball) throw std::logic_error("radius() on non-ball set");
  return radius_;
}

const Vector& FeasibleSet::lower() const {
  if (kind_ != Kind::Box) throw std::logic_error("lower() on non-box set");
  return a_;
}

const Vector& FeasibleSet::upper() const {
  if (kind_ != Kind::Box) throw std::logic_error("upper() on non-box set");
  return b_;
}

Vector project(const FeasibleSet& set, const Vector& point) {
  require_same_dim(set, point);
  require_finite(point, "point");
  if (set.kind() == FeasibleSet::Kind::Box) {
    return point.cwiseMax(set.lower()).cwiseMin(set.upper());
  }
  const Vector offset = point - set.center();
  const double dist = offset.norm();
  // The slack keeps re-projection of a just-projected boundary point exact.
  constexpr double kBoundarySlack = 16.0 * std::numeric_limits<double>::epsilon();
  if (dist <= set.radius() * (1.0 + kBoundarySlack)) {
    return point;
  }
  return set.center() + offset * (set.radius() / dist);
}

Vector prox_step(const FeasibleSet& set, const Vector& x_prev, const Vector& g, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("prox_step requires gamma > 0");
  }
  require_same_dim(set, x_prev);
  if (g.size() != x_prev.size()) {
    throw std::invalid_argument("gradient/point dimension mismatch");
  }
  require_finite(g, "gradient");
  return project(set, x_prev - gamma * g);
}

}  // namespace sgdrates
