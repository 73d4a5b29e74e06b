#ifndef PPTLAB_RNG_HPP
#define PPTLAB_RNG_HPP

#include <cstdint>

#include "pptlab/matrix.hpp"

namespace pptlab {

// Small splittable generator.  Streams are derived by hashing
// (master seed, instance index), so batch instances can run in parallel and
// still draw identical numbers regardless of scheduling.  All distributions
// are implemented here (no std::normal_distribution) to keep byte-level
// reproducibility independent of the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed)) {}

    // Child stream for instance `index`; independent of draws made so far.
    Rng split(std::uint64_t index) const;

    std::uint64_t next_u64();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    std::uint64_t uniform_index(std::uint64_t n); // [0, n)
    double normal();                        // standard normal, Box-Muller
    cplx cnormal();                         // complex standard normal (unit variance)

private:
    static std::uint64_t mix(std::uint64_t z);
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Gaussian matrix with iid complex normal entries.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

// Haar-distributed unitary: Gram-Schmidt of a Ginibre matrix; the triangular
// factor's diagonal is real positive by construction, which fixes the phases.
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

std::vector<cplx> random_unit_vector(std::size_t n, Rng& rng);

// Random Hermitian with entries O(1).
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);

// Wishart-style PSD matrix G G^* with G n-by-rank, normalized to trace 1
// when unit_trace is set.
ComplexMatrix random_psd(std::size_t n, std::size_t rank, Rng& rng, bool unit_trace = false);

} // namespace pptlab

#endif
