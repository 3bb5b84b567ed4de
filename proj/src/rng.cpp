#include "sgdrates/rng.hpp"

#include <cmath>
#include <numbers>

namespace sgdrates {

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = mag * std::sin(ang);
  has_spare_ = true;
  return mag * std::cos(ang);
}

double Rng::exponential() {
  return -std::log1p(-uniform());
}

Eigen::VectorXd Rng::unit_vector(Eigen::Index d) {
  Eigen::VectorXd v(d);
  while (true) {
    for (Eigen::Index i = 0; i < d; ++i) {
      v[i] = gaussian();
    }
    const double n = v.norm();
    if (n > 1e-12) {
      return v / n;
    }
  }
}

}  // namespace sgdrates
