#ifndef PPTLAB_EIGEN_HPP
#define PPTLAB_EIGEN_HPP

#include <array>
#include <vector>

#include "pptlab/matrix.hpp"

namespace pptlab {

// Spectral data of a Hermitian matrix: values ascending, eigenvectors as the
// columns of a unitary matrix, in matching order.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;

    std::vector<cplx> vector(std::size_t k) const { return vectors.col(k); }
};

// Global scale for the PSD feasibility tolerance: a Hermitian matrix counts
// as PSD when min eig >= -psd_tol_scale() * max(1, ||M||_op).
double& psd_tol_scale();
double psd_tol_for(double op_norm);

// Cyclic complex Jacobi.  Input must be Hermitian within 1e-12*||M||_F (it is
// symmetrized before iterating); sweeps stop when the off-diagonal Frobenius
// mass drops below 1e-13*||M||_F, capped at 100 sweeps.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

ComplexMatrix reconstruct(const HermitianEigen& e);

// Smallest eigenvalue with its eigenvector, plus the largest |eigenvalue|
// (one eigensolve; this backs every PSD verdict in the project).
struct EigenExtremes {
    double min_value;
    std::vector<cplx> min_vector;
    double max_abs;
};
EigenExtremes eig_extremes(const ComplexMatrix& hermitian);

bool is_psd(const ComplexMatrix& hermitian);

// M^p on the range of a PSD matrix; eigenvalues <= 1e-12 * lambda_max are
// treated as zero, so negative powers are pseudo-powers.
ComplexMatrix frac_power(const ComplexMatrix& m, double p);

ComplexMatrix sqrt_psd(const ComplexMatrix& m);

// Nearest PSD matrix in Frobenius norm (eigenvalue clipping).
ComplexMatrix psd_project(const ComplexMatrix& hermitian);

struct MatrixNorms {
    double op;        // largest singular value
    double trace;     // sum of singular values
    double frobenius;
};
MatrixNorms norms(const ComplexMatrix& m);

// a = out[0] - out[1] + i*out[2] - i*out[3], each part PSD with
// out[0]*out[1] = 0 and out[2]*out[3] = 0 on ranges.
std::array<ComplexMatrix, 4> jordan_decompose(const ComplexMatrix& a);

// Deterministic basis inside degenerate eigenvalue blocks: vectors are
// re-orthonormalized in index order and phase-fixed (first component of
// magnitude above cutoff made real positive).  Needed wherever a construction
// depends on the chosen eigenbasis, not only on the spectral projections.
void canonicalize_degenerate_blocks(HermitianEigen& e, double block_tol);

} // namespace pptlab

#endif
