#pragma once

#include <cstddef>
#include <functional>

namespace foldquad {

/// Worker count used when a call passes jobs <= 0. Defaults to the hardware concurrency.
int default_jobs();
void set_default_jobs(int jobs);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Callers write results into
/// per-index slots and reduce afterwards in index order, so results do not depend on jobs.
/// The first exception thrown by any task is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int jobs = 0);

} // namespace foldquad
