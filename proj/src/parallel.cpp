#include "pptlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef PPTLAB_HAS_OPENMP
#include <omp.h>
#endif

namespace pptlab {

namespace {

int env_threads() {
#ifdef PPTLAB_HAS_OPENMP
    const char* s = std::getenv("WORKBENCH_THREADS");
    if (s) {
        int n = std::atoi(s);
        if (n > 0) return n;
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::atomic<int> g_override{-1}; // -1 = use environment

} // namespace

int thread_count() {
    int o = g_override.load(std::memory_order_relaxed);
    if (o > 0) return o;
    static const int n = env_threads();
    return n;
}

void set_thread_count(int n) {
    g_override.store(n > 0 ? n : -1, std::memory_order_relaxed);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int threads = thread_count();
#ifdef PPTLAB_HAS_OPENMP
    if (threads > 1 && n > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            fn(static_cast<std::size_t>(i));
        return;
    }
#endif
    (void)threads;
    serial_for(n, fn);
}

void serial_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

} // namespace pptlab
