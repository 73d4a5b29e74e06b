#ifndef PPTLAB_PARALLEL_HPP
#define PPTLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace pptlab {

// Number of worker threads.  Controlled by the WORKBENCH_THREADS environment
// variable (0 or unset = OpenMP default); read once at first use.
int thread_count();

// Force a thread count programmatically (used by tests and the benchmark).
// n = 0 restores the environment-derived default.
void set_thread_count(int n);

// Runs fn(i) for i in [0, n).  Results must be written into pre-sized slots
// indexed by i so that the outcome is independent of scheduling.  Falls back
// to a plain loop when only one thread is configured.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Serial reference path with identical semantics, kept for testing.
void serial_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace pptlab

#endif
