#pragma once

#include <functional>

namespace fracplap::parallel {

// Thread budget: min(FRACPLAP_THREADS, hardware) with 0 = auto. Never below 1.
int thread_budget();

// Runs fn(0..n-1) on up to thread_budget() threads. Tasks must be pure and
// write only to their own slot; results are then identical for any thread
// count, which is what keeps sweeps and multi-radius reports deterministic.
// Exceptions are rethrown (the lowest-index one wins).
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace fracplap::parallel
