#ifndef PPTLAB_STORMER_HPP
#define PPTLAB_STORMER_HPP

#include <vector>

#include "pptlab/matrix.hpp"
#include "pptlab/rng.hpp"

namespace pptlab {

// Moore-Penrose inverse through the spectral cutoff of matcore.
ComplexMatrix pseudo_inverse(const ComplexMatrix& a);

// Pair (a1, a2) entering the 2x2 operator block matrix
// [[a1*a1, a1*a2], [a2*a1, a2*a2]].
struct StormerPair {
    ComplexMatrix a1, a2;
};

ComplexMatrix stormer_block(const StormerPair& p);
ComplexMatrix stormer_block_transposed(const StormerPair& p);

struct StormerCondition {
    bool block_psd;
    bool transposed_psd;
    double min_eig_block;
    double min_eig_transposed;
    bool holds() const { return block_psd && transposed_psd; }
};

StormerCondition stormer_condition(const StormerPair& p);

struct ZhanResult {
    ComplexMatrix w;          // pinv(A^{1/2}) B pinv(C^{1/2})
    double w_norm;
    bool is_contraction;      // ||W||_op <= 1 + 1e-9
    double factor_residual;   // ||B - A^{1/2} W C^{1/2}||_F
    bool block_psd;           // direct eigensolve of [[A,B],[B*,C]]
    double block_min_eig;
};

// Contraction criterion for [[A,B],[B*,C]] >= 0 with A, C PSD.
ZhanResult zhan_factor(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c);

struct StormerDecomposition {
    ComplexMatrix n;                          // a2 * pinv(a1), verified normal
    double normality_residual;                // ||NN* - N*N||_F
    std::vector<cplx> lambdas;                // eigenvalues of N, (|l|, arg l) ascending
    std::vector<std::vector<cplx>> e_vectors; // orthonormal eigenvectors of N
    std::vector<double> alphas;               // ||a1* e_i||
    std::vector<std::vector<cplx>> phis;      // a1* e_i / alpha_i
    double residual_a2;                       // a2 vs sum_i lambda_i |e_i><a1* e_i|
    double residual_block;                    // block vs sum alpha_i^2 Lambda_i (x) |phi_i><phi_i|
    double residual_separable;                // block vs the projector product form
    bool partial;                             // a1 rank-deficient, generalized inverse used
};

// Requires the Stormer condition (throws condition_fails otherwise); throws
// normality_fails with the residual in the message if a2 a1^{-1} is not
// normal, since that would contradict what the condition guarantees.
StormerDecomposition canonical_decomposition(const StormerPair& p);

// Random normal matrix U diag(lambda) U^* with complex eigenvalues.
ComplexMatrix random_normal_matrix(std::size_t d, Rng& rng);

// Spectral data of a (near-)normal matrix via its commuting Hermitian parts.
struct NormalEigen {
    std::vector<cplx> values;
    ComplexMatrix vectors;
};
NormalEigen eig_normal(const ComplexMatrix& n);

} // namespace pptlab

#endif
