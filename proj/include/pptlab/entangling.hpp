#ifndef PPTLAB_ENTANGLING_HPP
#define PPTLAB_ENTANGLING_HPP

#include <cstdint>
#include <utility>

#include "pptlab/eigen.hpp"
#include "pptlab/matrix.hpp"
#include "pptlab/states.hpp"

namespace pptlab {

// The operator H : H_A -> H_A (x) H_B (x) H_B built from a state's spectral
// data.  Conjugations are basis conjugations: basisA fixes the A-side
// conjugation entering both H and the transpose a -> a^t; basisAB must extend
// the eigenbasis of rho (the default is exactly that eigenbasis, with
// degenerate blocks canonicalized for determinism).
struct EntanglingOperator {
    FactorSplit split;
    ComplexMatrix matrix;        // (dA*dB*dB) x dA
    HermitianEigen source_eigs;  // canonicalized spectral data of the state
    ComplexMatrix basisA;        // columns v_m
    ComplexMatrix basisAB;       // columns e_i
};

enum class MapDirection {
    phi,      // B(K) -> B(H)_*
    phi_star, // B(H) -> B(K)_*
};

struct EntanglementMap {
    MapDirection direction;
    std::size_t dim_in;
    std::size_t dim_out;
    ComplexMatrix choi; // sum_ij E_ij (x) map(E_ij), side dim_in * dim_out
};

ComplexMatrix apply_entanglement_map(const EntanglementMap& m, const ComplexMatrix& x);

// Pass empty matrices to get the default bases (computational for A, the
// state's canonicalized eigenbasis for AB).
EntanglingOperator build_entangling_operator(const BipartiteState& s,
                                             const ComplexMatrix& basisA = {},
                                             const ComplexMatrix& basisAB = {});

// The transpose a^t = J_H a^* J_H determined by the operator's A-side basis.
ComplexMatrix jh_transpose(const EntanglingOperator& h, const ComplexMatrix& a);

// phi*(a) = Tr_{H(x)K} (H a^t H^*)
ComplexMatrix apply_phi_star(const EntanglingOperator& h, const ComplexMatrix& a);
// phi(b) = (H^* (1(x)b) H)^t
ComplexMatrix apply_phi(const EntanglingOperator& h, const ComplexMatrix& b);

// Independent closed form Tr_H((a(x)1) rho); used as cross-check oracle.
ComplexMatrix phi_star_closed_form(const BipartiteState& s, const ComplexMatrix& a);

std::pair<EntanglementMap, EntanglementMap> entanglement_maps_from(const EntanglingOperator& h);

struct ResidualReport {
    std::size_t samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Checks omega(a(x)b) = Tr a^t H^*(1(x)b) H on seeded random pairs.
ResidualReport verify_representation(const BipartiteState& s, std::size_t samples,
                                     std::uint64_t seed);

// phi* of the pure state |x><x| applied to a (closed form route).
ComplexMatrix phi_star_of_pure(const std::vector<cplx>& x, const FactorSplit& split,
                               const ComplexMatrix& a);

// The two maximally entangled 3D maps: first the signed-permutation map, then
// (1/3) * transpose.
std::pair<EntanglementMap, EntanglementMap> example_maximally_entangled_maps();

struct CPViolationWitness {
    std::size_t k;
    std::size_t l;
    std::vector<cplx> psi;   // in C^dA (x) C^dB
    double value;            // direct evaluation of the quadratic form
    double predicted;        // -2 |Re lambda_k conj(lambda_l)|
};

// For an entangled pure vector, exhibits a vector on which the CP form of
// phi* goes negative.  Throws not_entangled when x has Schmidt rank 1.
CPViolationWitness cp_violation_witness_pure(const std::vector<cplx>& x, const FactorSplit& split);

} // namespace pptlab

#endif
