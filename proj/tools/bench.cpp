// Benchmark comparing the serial reference kernels against the OpenMP paths:
// the row-parallel matrix product and the batch-parallel suite loops.

#include <chrono>
#include <cstdio>
#include <vector>

#include "pptlab/eigen.hpp"
#include "pptlab/matrix.hpp"
#include "pptlab/measures.hpp"
#include "pptlab/parallel.hpp"
#include "pptlab/rng.hpp"
#include "pptlab/states.hpp"

using namespace pptlab;

namespace {

double seconds(const std::function<void()>& fn, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count() / reps;
}

} // namespace

int main() {
    std::printf("threads configured: %d\n\n", thread_count());

    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial[ms]", "openmp[ms]", "speedup");
    Rng rng(2024);
    for (std::size_t n : {64, 128, 256, 384}) {
        ComplexMatrix a = ginibre(n, n, rng);
        ComplexMatrix b = ginibre(n, n, rng);
        ComplexMatrix r1, r2;
        const double ts = seconds([&] { r1 = mul_serial(a, b); }, 3);
        const double tp = seconds([&] { r2 = mul_parallel(a, b); }, 3);
        const bool same = r1 == r2; // bit-identical by construction
        std::printf("matmul %4zux%-18zu %10.3f %10.3f %7.2fx%s\n", n, n, ts * 1e3, tp * 1e3,
                    ts / tp, same ? "" : "  MISMATCH");
    }

    std::printf("\n%-28s %10s %10s %8s\n", "batch loop", "serial[ms]", "openmp[ms]", "speedup");
    {
        const std::size_t instances = 64;
        auto work = [&](std::size_t i) {
            Rng inst = Rng(7).split(i);
            ComplexMatrix rho = random_psd(9, 9, inst, true);
            BipartiteState s{FactorSplit{3, 3}, rho};
            (void)is_ppt(s);
        };
        std::vector<char> sink(instances);
        const double ts = seconds([&] { serial_for(instances, work); }, 2);
        const double tp = seconds([&] { parallel_for(instances, work); }, 2);
        std::printf("ppt checks (3x3, %3zu)%7s %10.3f %10.3f %7.2fx\n", instances, "", ts * 1e3,
                    tp * 1e3, ts / tp);
    }
    {
        const std::size_t instances = 16;
        std::vector<double> out_s(instances), out_p(instances);
        auto work = [&](std::vector<double>& out, std::size_t i) {
            Rng inst = Rng(11).split(i);
            ConeVector xi{FactorSplit{2, 2}, random_hermitian(4, inst)};
            out[i] = d_ge(xi);
        };
        const double ts =
            seconds([&] { serial_for(instances, [&](std::size_t i) { work(out_s, i); }); }, 2);
        const double tp =
            seconds([&] { parallel_for(instances, [&](std::size_t i) { work(out_p, i); }); }, 2);
        bool same = true;
        for (std::size_t i = 0; i < instances; ++i) same = same && out_s[i] == out_p[i];
        std::printf("dykstra batch (2x2, %2zu)%5s %10.3f %10.3f %7.2fx%s\n", instances, "",
                    ts * 1e3, tp * 1e3, ts / tp, same ? "" : "  MISMATCH");
    }
    return 0;
}
