#include "sgdrates/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgdrates {

namespace {

double log_binom_pmf(std::int64_t n, std::int64_t i, double p) {
  const double nd = static_cast<double>(n);
  const double id = static_cast<double>(i);
  return std::lgamma(nd + 1.0) - std::lgamma(id + 1.0) - std::lgamma(nd - id + 1.0) +
         id * std::log(p) + (nd - id) * std::log1p(-p);
}

// sum_{i=from}^{to} pmf(i), summed in the direction of decreasing terms.
double pmf_range_sum(std::int64_t n, std::int64_t from, std::int64_t to, double p,
                     bool descending_terms) {
  if (from > to) return 0.0;
  const double odds = p / (1.0 - p);
  if (descending_terms) {
    const double log_start = log_binom_pmf(n, from, p);
    double term = 1.0;
    double sum = 1.0;
    for (std::int64_t i = from; i < to; ++i) {
      term *= static_cast<double>(n - i) / static_cast<double>(i + 1) * odds;
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return std::exp(log_start) * sum;
  }
  const double log_start = log_binom_pmf(n, to, p);
  double term = 1.0;
  double sum = 1.0;
  for (std::int64_t i = to; i > from; --i) {
    term *= static_cast<double>(i) / static_cast<double>(n - i + 1) / odds;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return std::exp(log_start) * sum;
}

}  // namespace

double binomial_sf(std::int64_t n, std::int64_t k, double p) {
  if (n < 0 || !(p >= 0.0) || !(p <= 1.0)) {
    throw std::invalid_argument("binomial_sf requires n >= 0 and p in [0, 1]");
  }
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double mode = static_cast<double>(n) * p;
  if (static_cast<double>(k) > mode) {
    // Terms decay above the mode.
    return pmf_range_sum(n, k, n, p, /*descending_terms=*/true);
  }
  // Complement: sum pmf over [0, k-1]; terms decay going down from k-1.
  const double below = pmf_range_sum(n, 0, k - 1, p, /*descending_terms=*/false);
  return std::max(0.0, 1.0 - below);
}

double sign_test_pvalue(std::int64_t n, std::int64_t k) {
  return binomial_sf(n, k, 0.5);
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median of empty sample");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double upper_quantile(std::span<const double> sorted, double tail) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  if (!(tail >= 0.0) || !(tail <= 1.0)) {
    throw std::invalid_argument("tail probability must lie in [0, 1]");
  }
  const auto n = static_cast<std::int64_t>(sorted.size());
  auto rank = static_cast<std::int64_t>(std::ceil((1.0 - tail) * static_cast<double>(n)));
  rank = std::clamp<std::int64_t>(rank, 1, n);
  return sorted[static_cast<std::size_t>(rank - 1)];
}

}  // namespace sgdrates
