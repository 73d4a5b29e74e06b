#ifndef PPTLAB_TOMITA_HPP
#define PPTLAB_TOMITA_HPP

#include <cstdint>

#include "pptlab/eigen.hpp"
#include "pptlab/entangling.hpp"
#include "pptlab/matrix.hpp"
#include "pptlab/states.hpp"

namespace pptlab {

// Standard form of B(H) on Hilbert-Schmidt space for a faithful density rho:
// cyclic vector Omega = rho^{1/2}, Delta X = rho X rho^{-1}, modular
// conjugation J_m X = X^*.  The basis conjugations J_c (on H) and J (on HS
// space) and the transposition unitary U all live in rho's eigenbasis; for a
// rho diagonal in the computational basis they reduce to plain entrywise
// conjugation and plain transposition.
struct StandardForm {
    ComplexMatrix rho;
    HermitianEigen eigs;    // ascending, faithful (all values > 0)
    ComplexMatrix omega;    // rho^{1/2}
    ComplexMatrix s;        // E E^T, the linear part of the conjugations
    bool diagonal;          // true when rho is diagonal in the computational basis
};

// Throws not_faithful when min eig <= 1e-12 * max eig.
StandardForm standard_form(const ComplexMatrix& rho);

// Delta^p X = rho^p X rho^{-p} via eigenbasis scaling.
ComplexMatrix delta_power(const StandardForm& sf, const ComplexMatrix& x, double p);

// J_m X = X^*
ComplexMatrix modular_conjugation(const ComplexMatrix& x);

// J X = S conj(X) S^* (entrywise conjugation in the eigenbasis)
ComplexMatrix vector_conjugation(const StandardForm& sf, const ComplexMatrix& x);

// a^t = J_c a^* J_c = S a^T S^*; as an HS-space map this is also the
// transposition unitary U = sum |E_ij)(E_ji|.
ComplexMatrix eigenbasis_transpose(const StandardForm& sf, const ComplexMatrix& x);

struct TranspositionReport {
    std::size_t trials = 0;
    double max_residual_adjoint_form = 0.0;  // a^t xi vs J a^* J xi
    double max_residual_polar_form = 0.0;    // a^t Omega vs U Delta^{1/2}(a Omega)
    bool pass = false;
};

TranspositionReport verify_transposition_structure(const StandardForm& sf, std::size_t trials,
                                                   std::uint64_t seed);

// Reference product density rho_A (x) rho_B with its modular data; the
// factors must be faithful and diagonal in the computational basis (rotate
// first with diagonalize_density when they are not).
struct ConeContext {
    FactorSplit split;
    ComplexMatrix rho_a, rho_b;
    ComplexMatrix rho;       // rho_a (x) rho_b
    ComplexMatrix rho_q;     // rho^{1/4}
    ComplexMatrix rho_mq;    // rho^{-1/4}
};

ConeContext cone_context(const FactorSplit& split, const ComplexMatrix& rho_a,
                         const ComplexMatrix& rho_b);

// Maximally mixed reference.
ConeContext uniform_cone_context(const FactorSplit& split);

struct DiagonalizedDensity {
    ComplexMatrix diagonal; // eigenvalues ascending on the diagonal
    ComplexMatrix unitary;  // rho = U diag U^*
};
DiagonalizedDensity diagonalize_density(const ComplexMatrix& rho);

// Element of the composite Hilbert-Schmidt space.
struct ConeVector {
    FactorSplit split;
    ComplexMatrix x;
};

// xi = sigma^{1/2}, the unique natural-cone vector implementing the state.
ConeVector cone_representative(const BipartiteState& sigma);

// rho^{1/4} A rho^{1/4} for PSD A (the cone element Delta^{1/4} A Omega).
ConeVector cone_vector_of_operator(const ComplexMatrix& a, const ConeContext& ctx);

// U xi = xi^t in the eigenbasis of the standard form.
ComplexMatrix transpose_cone_vector(const ComplexMatrix& xi, const StandardForm& sf);

struct ConeMembership {
    bool in_pn = false;
    bool in_pn_tau = false;
    bool in_intersection = false;
    double min_eig_x = 0.0;     // min eig of X
    double min_eig_x_pt = 0.0;  // min eig of X^{t_B}
    double min_eig_a = 0.0;     // min eig of A = rho^{-1/4} X rho^{-1/4}
    double min_eig_a_pt = 0.0;
};

ConeMembership cone_membership(const ConeVector& xi, const ConeContext& ctx);

// One comparison record for a state against every characterization the
// project implements.  Only (a) <=> (b) and the product-state case of the
// last identity are guaranteed; the rest is recorded evidence.
struct ComparisonRecord {
    PPTVerdict density_ppt;                 // (a)
    bool phi_star_cp = false;               // (b)
    bool phi_star_co_cp = false;
    ConeMembership sqrt_membership;         // (c) xi = sigma^{1/2}
    ConeMembership sandwich_membership;     // (d) rho^{1/4} sigma rho^{1/4}
    double eq_u_residual = 0.0;             // (e) max probe residual
    std::size_t probes = 0;
};

ComparisonRecord compare_characterizations(const BipartiteState& s, const ConeContext& ctx,
                                           std::size_t probes, std::uint64_t seed);

} // namespace pptlab

#endif
