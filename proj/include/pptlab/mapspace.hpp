#ifndef PPTLAB_MAPSPACE_HPP
#define PPTLAB_MAPSPACE_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pptlab/entangling.hpp"
#include "pptlab/matrix.hpp"

namespace pptlab {

// Linear map between matrix algebras, stored through its Choi matrix
// Choi(m) = sum_ij E_ij (x) m(E_ij) (fixed project-wide convention).
struct LinearMap {
    std::size_t dim_in = 0;
    std::size_t dim_out = 0;
    ComplexMatrix choi; // side dim_in * dim_out

    FactorSplit choi_split() const { return FactorSplit{dim_in, dim_out}; }
};

LinearMap map_from_choi(std::size_t dim_in, std::size_t dim_out, ComplexMatrix choi);
LinearMap map_from_action(std::size_t dim_in, std::size_t dim_out,
                          const std::function<ComplexMatrix(const ComplexMatrix&)>& action);
LinearMap map_from_kraus(std::size_t dim_in, std::size_t dim_out,
                         const std::vector<ComplexMatrix>& factors);
LinearMap map_from_entanglement(const EntanglementMap& m);

LinearMap identity_map(std::size_t d);
LinearMap transposition_map(std::size_t d);

ComplexMatrix apply_map(const LinearMap& m, const ComplexMatrix& x);

struct CPClassification {
    bool cp;
    bool co_cp;
    double min_choi_eig;
    double min_cochoi_eig;
};

// cp <=> Choi PSD, co_cp <=> Choi of t o m PSD (the Choi partial transpose).
CPClassification classify_cp(const LinearMap& m);

struct SearchBudget {
    std::size_t starts = 24;
    std::size_t iters = 200;
};

enum class PositiveStatus { no_violation_found, verified_violation };

struct PositivityVerdict {
    PositiveStatus status;
    double min_value;        // smallest (y, m(|x><x|) y) seen
    std::vector<cplx> x, y;  // witness pair when a violation was verified
};

// Multi-start see-saw minimization of (y, m(|x><x|) y) over unit vectors.
// "no_violation_found" is not a proof of positivity.
PositivityVerdict is_positive_map(const LinearMap& m, const SearchBudget& budget,
                                  std::uint64_t seed);

struct DecompBudget {
    std::size_t feas_iters = 20000;
    std::size_t dual_steps = 1500;
    std::size_t dual_proj_iters = 150;
};

enum class DecomposableStatus { feasible, certificate, inconclusive };

struct DecomposabilityVerdict {
    DecomposableStatus status = DecomposableStatus::inconclusive;
    // feasible: Choi(m) = cp_part + cocp_part^Gamma with both parts PSD
    ComplexMatrix cp_part, cocp_part;
    double residual = 0.0;
    // certificate: PPT state with Tr(Choi(m) * witness) = value < 0
    ComplexMatrix witness;
    double value = 0.0;
    double witness_min_eig = 0.0;
    double witness_min_eig_pt = 0.0;
};

DecomposabilityVerdict is_decomposable(const LinearMap& m, const DecompBudget& budget = {},
                                       std::uint64_t seed = 1);

enum class PairingConvention { projective, injective };

using TensorElement = std::vector<std::pair<ComplexMatrix, ComplexMatrix>>;

// projective: sum Tr(m(a_i) b_i^t); injective: sum Tr(m(a_i) b_i).
cplx pair_map_functional(const LinearMap& m, const TensorElement& element,
                         PairingConvention convention);

// Kraus factors of a CP map from the scaled eigenvectors of its Choi matrix;
// throws not_cp when the Choi matrix is not PSD.
std::vector<ComplexMatrix> kraus_factors(const LinearMap& m);

struct CriterionReport {
    double min_value = 0.0;
    bool violation_found = false;
    std::size_t trials = 0;
};

// Samples the positivity form of the CP criterion with n-tuples of algebra
// elements plus a probe vector; also tries one candidate tuple built from the
// Choi minimum eigenvector, which finds a violation whenever one exists at
// n = dim_in.
CriterionReport cp_criterion_check(const LinearMap& m, std::size_t n, std::size_t trials,
                                   std::uint64_t seed);

// sum_i ||a_i||_op * ||b_i||_1, an upper bound on the projective norm of
// sum_i a_i (x) b_i.
double projective_norm_ub(const TensorElement& decomposition);

struct MapClassification {
    CPClassification cp;
    PositivityVerdict positive;
    DecomposabilityVerdict decomposable;
};

MapClassification classify_map(const LinearMap& m, const SearchBudget& pos_budget = {},
                               const DecompBudget& dec_budget = {}, std::uint64_t seed = 1);

} // namespace pptlab

#endif
