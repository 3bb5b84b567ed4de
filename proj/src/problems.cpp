#include "sgdrates/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace sgdrates {

namespace {

Matrix random_rotation(Eigen::Index d, std::uint64_t seed) {
  Rng rng(seed);
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      g(i, j) = rng.gaussian();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
  return q;
}

}  // namespace

double ProblemSpec::value(const Vector& x) const {
  const Vector z = rotation_.transpose() * (x - x_star_);
  return 0.5 * (spectrum_.array() * z.array().square()).sum();
}

Vector ProblemSpec::gradient(const Vector& x) const {
  const Vector z = rotation_.transpose() * (x - x_star_);
  return rotation_ * (spectrum_.cwiseProduct(z));
}

ProblemSpec make_problem(Eigen::Index d, double mu, double lipschitz, std::uint64_t rotation_seed,
                         FeasibleSet feasible, double noise_radius, bool interior) {
  if (d < 1) {
    throw std::invalid_argument("problem dimension must be >= 1");
  }
  if (!(mu > 0.0) || !(lipschitz >= mu) || !std::isfinite(lipschitz)) {
    throw std::invalid_argument("need 0 < mu <= L");
  }
  if (d == 1 && mu != lipschitz) {
    throw std::invalid_argument("a 1-d spectrum cannot attain both mu and L; need d >= 2");
  }
  if (!(noise_radius >= 0.0) || !std::isfinite(noise_radius)) {
    throw std::invalid_argument("noise radius must be >= 0");
  }
  if (feasible.dim() != d) {
    throw std::invalid_argument("feasible set dimension mismatch");
  }

  Vector spectrum(d);
  if (d == 1) {
    spectrum[0] = mu;
  } else {
    for (Eigen::Index i = 0; i < d; ++i) {
      spectrum[i] = mu + (lipschitz - mu) * static_cast<double>(i) / static_cast<double>(d - 1);
    }
  }

  Vector x_star(d);
  if (feasible.kind() == FeasibleSet::Kind::Ball) {
    x_star = feasible.center();
    if (!interior) {
      x_star[0] += feasible.radius();
    }
  } else {
    x_star = interior ? Vector(0.5 * (feasible.lower() + feasible.upper())) : feasible.upper();
  }

  return ProblemSpec(std::move(spectrum), random_rotation(d, rotation_seed), std::move(x_star),
                     std::move(feasible), noise_radius, interior, rotation_seed, mu, lipschitz);
}

double eval_f(const ProblemSpec& spec, const Vector& x) {
  return spec.value(x);
}

Vector grad_f(const ProblemSpec& spec, const Vector& x) {
  return spec.gradient(x);
}

GradientSample sample_gradient(const ProblemSpec& spec, const Vector& x, Rng& rng) {
  GradientSample s;
  s.g_true = spec.gradient(x);
  if (spec.noise_radius() == 0.0) {
    s.delta = Vector::Zero(spec.dim());
    s.g_noisy = s.g_true;
    return s;
  }
  const double scale = rng.uniform() * spec.noise_radius();
  s.delta = scale * rng.unit_vector(spec.dim());
  s.g_noisy = s.g_true + s.delta;
  return s;
}

}  // namespace sgdrates
