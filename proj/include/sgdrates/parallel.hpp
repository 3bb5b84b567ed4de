#pragma once

#include <cstdint>
#include <functional>

namespace sgdrates {

/// Worker count: an explicit request wins, then the SGD_RATES_JOBS
/// environment variable, then hardware concurrency.
int resolve_jobs(int requested);

/// Runs body(0..n-1) across `jobs` threads. Indices are claimed from an
/// atomic counter; the caller's result slots must be index-addressed so the
/// outcome is independent of scheduling. The first exception thrown by any
/// worker is rethrown after all workers finish.
void parallel_for(std::int64_t n, int jobs, const std::function<void(std::int64_t)>& body);

}  // namespace sgdrates
