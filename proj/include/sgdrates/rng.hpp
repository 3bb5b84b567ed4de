#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace sgdrates {

/// Seeded random stream with distribution code owned by this project, so that
/// results do not depend on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform draw in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal draw (Box-Muller, cached spare).
  double gaussian();

  /// Exponential(1) draw.
  double exponential();

  /// Uniform direction on the unit sphere in R^d.
  Eigen::VectorXd unit_vector(Eigen::Index d);

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sgdrates
