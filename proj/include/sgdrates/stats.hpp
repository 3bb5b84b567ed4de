#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sgdrates {

/// Pr[Bin(n, p) >= k], exact. Stable for n up to ~1e7 via a term recurrence
/// started from the log-probability at k (or the complement below the mode).
double binomial_sf(std::int64_t n, std::int64_t k, double p);

/// One-sided sign-test p-value for "successes >= k out of n" under p = 1/2.
double sign_test_pvalue(std::int64_t n, std::int64_t k);

double mean(std::span<const double> xs);

/// Median of an unsorted sample (midpoint rule for even sizes).
double median(std::vector<double> xs);

/// Upper quantile at tail probability `tail` from an ascending-sorted sample:
/// the nearest-rank order statistic at level 1 - tail.
double upper_quantile(std::span<const double> sorted, double tail);

}  // namespace sgdrates
