#pragma once

#include <cstddef>
#include <functional>

namespace potts {

/// Process-wide worker count for the per-line solves (0 = hardware default).
void set_thread_count(int threads);
int thread_count();

/// Runs fn(i) for i in [0, n). Work items must write disjoint state; the
/// result is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace potts
