#ifndef PPTLAB_STATES_HPP
#define PPTLAB_STATES_HPP

#include <cstdint>
#include <vector>

#include "pptlab/eigen.hpp"
#include "pptlab/matrix.hpp"
#include "pptlab/rng.hpp"

namespace pptlab {

// Bipartite density matrix with its factor dimensions.
struct BipartiteState {
    FactorSplit split;
    ComplexMatrix rho;
};

// Throws not_a_state unless rho is Hermitian, PSD within tolerance and has
// unit trace within 1e-10.
void validate_state(const BipartiteState& s);

struct PPTVerdict {
    bool is_ppt;
    double min_eig;              // minimum eigenvalue of rho^{t_B}
    std::vector<cplx> witness;   // eigenvector at min_eig
};

PPTVerdict is_ppt(const BipartiteState& s);

// p |Phi+><Phi+| + (1-p) I/d^2 on d x d; PPT exactly for p <= 1/(d+1).
BipartiteState isotropic(std::size_t d, double p);

std::vector<cplx> max_entangled_vector(std::size_t d);

struct SchmidtSpec {
    bool haar = false;                   // ignore coefficients, draw Haar
    std::vector<double> coefficients;    // nonnegative, squared sum 1
};

// Rank-one state with prescribed Schmidt coefficients, rotated by random
// local unitaries (or a Haar-random pure state when spec.haar is set).
BipartiteState random_pure_bipartite(const FactorSplit& split, const SchmidtSpec& spec,
                                     std::uint64_t seed);

// Wishart density of the given rank, trace 1.
ComplexMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);

struct SeparableState {
    BipartiteState state;
    // The generating convex decomposition: weights and local pure vectors.
    std::vector<double> weights;
    std::vector<std::vector<cplx>> xs;
    std::vector<std::vector<cplx>> ys;
};

SeparableState random_separable(const FactorSplit& split, std::size_t terms, std::uint64_t seed);

// Full-rank faithful density (eigenvalues bounded away from zero).
ComplexMatrix random_faithful_density(std::size_t dim, std::uint64_t seed, double min_weight = 0.05);

} // namespace pptlab

#endif
