#include "pptlab/rng.hpp"

#include <cmath>

namespace pptlab {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

std::uint64_t Rng::mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

Rng Rng::split(std::uint64_t index) const {
    Rng child(0);
    child.state_ = mix(state_ ^ mix(index + 1));
    child.have_spare_ = false;
    return child;
}

std::uint64_t Rng::next_u64() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    // Modulo bias is irrelevant at our n (<< 2^32).
    return next_u64() % n;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

cplx Rng::cnormal() {
    const double re = normal(), im = normal();
    return cplx(re, im) / std::sqrt(2.0);
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.cnormal();
    return g;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
    ComplexMatrix g = ginibre(n, n, rng);
    // Modified Gram-Schmidt; R's diagonal comes out real positive so no
    // extra phase correction is needed for the Haar measure.
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<cplx> v = g.col(k);
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<cplx> q = g.col(j);
            cplx ov = inner(q, v);
            for (std::size_t i = 0; i < n; ++i) v[i] -= ov * q[i];
        }
        normalize(v);
        g.set_col(k, v);
    }
    return g;
}

std::vector<cplx> random_unit_vector(std::size_t n, Rng& rng) {
    std::vector<cplx> v(n);
    for (auto& e : v) e = rng.cnormal();
    normalize(v);
    return v;
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    return ginibre(n, n, rng).hermitize();
}

ComplexMatrix random_psd(std::size_t n, std::size_t rank, Rng& rng, bool unit_trace) {
    if (rank == 0 || rank > n) throw bad_parameter("random_psd: rank must be in [1, n]");
    ComplexMatrix g = ginibre(n, rank, rng);
    ComplexMatrix w = mul(g, g.adjoint()).hermitize();
    if (unit_trace) {
        const double tr = w.trace().real();
        if (tr > 0.0) w *= cplx(1.0 / tr);
    }
    return w;
}

} // namespace pptlab
