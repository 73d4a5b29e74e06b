#ifndef PPTLAB_CKLMAPS_HPP
#define PPTLAB_CKLMAPS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pptlab/mapspace.hpp"
#include "pptlab/matrix.hpp"

namespace pptlab {

// Parameters of the three-parameter map family on M_3.
struct CKLParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

// psi[a,b,c]: x -> diag(a x11 + b x22 + c x33,
//                       a x22 + b x33 + c x11,
//                       a x33 + b x11 + c x22)
LinearMap ckl_psi_map(const CKLParams& p);
// phi[a,b,c](x) = psi[a,b,c](x) - x
LinearMap ckl_map(const CKLParams& p);

// Exact classification from the parameter inequalities, plus numerical
// cross-checks against the generic map machinery.  Agreement flags are only
// asserted away from the region boundaries (band +-1e-3).
struct CKLClassification {
    CKLParams params;
    bool positive = false;
    bool cp = false;
    bool decomposable = false;
    double boundary_distance = 0.0; // distance to the nearest analytic boundary
    bool near_boundary = false;

    bool has_numeric = false;
    CPClassification numeric_cp{};
    PositivityVerdict numeric_positive{};
    DecomposabilityVerdict numeric_decomposable{};
    bool cp_agrees = true;
    bool positive_agrees = true;
    bool decomposable_agrees = true;
};

CKLClassification ckl_classify_analytic(const CKLParams& p);
CKLClassification ckl_classify(const CKLParams& p, const SearchBudget& pos_budget = {},
                               const DecompBudget& dec_budget = {}, std::uint64_t seed = 1);

// The functional omega(x (x) y) = Tr(phi[a,b,c](x) y^t), evaluated straight
// from the entrywise action on matrix units (independent of the Choi path).
struct CKLFunctional {
    CKLParams params;
    bool positive_region;
    LinearMap map;

    cplx eval(const ComplexMatrix& x, const ComplexMatrix& y) const;
    cplx eval(const TensorElement& element) const;
    // Extension of the functional to all of M_3 (x) M_3.
    double extension_value(const ComplexMatrix& w) const;
};

CKLFunctional ckl_functional(const CKLParams& p);

struct WitnessSearchResult {
    double projective_min_sampled = 0.0; // min over random PSD product pairs
    std::size_t samples = 0;
    ComplexMatrix injective_witness;     // PSD W with extension value < 0
    double injective_value = 0.0;
    bool witness_found = false;
    bool witness_is_ppt = false;
};

WitnessSearchResult ckl_witness_search(const CKLFunctional& f, std::size_t samples,
                                       std::uint64_t seed);

struct CKLGridReport {
    std::size_t points = 0;
    std::size_t cp_checked = 0;
    std::size_t cp_disagreements = 0;
    std::size_t positive_checked = 0;
    std::size_t positive_disagreements = 0;
    std::size_t decomposable_checked = 0;
    std::size_t decomposable_failures = 0;
    double max_feasibility_residual = 0.0;
    std::vector<std::string> exceptions;
};

// Validates the analytic regions on an n^3 grid over a in (0,4), b,c in
// (0,3).  The CP <=> Choi-PSD comparison runs on every off-band point; the
// budgeted positivity and decomposability searches run on seeded subsamples.
CKLGridReport ckl_grid_validate(std::size_t n, std::size_t positivity_samples,
                                std::size_t feasibility_samples, std::uint64_t seed);

} // namespace pptlab

#endif
