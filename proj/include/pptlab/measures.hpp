#ifndef PPTLAB_MEASURES_HPP
#define PPTLAB_MEASURES_HPP

#include <cstdint>
#include <vector>

#include "pptlab/matrix.hpp"
#include "pptlab/tomita.hpp"

namespace pptlab {

struct DykstraOptions {
    double tol = 1e-10;
    std::size_t max_iter = 100000;
};

struct DykstraResult {
    ConeVector projection;
    double distance = 0.0;          // ||xi - projection||_F
    std::size_t iterations = 0;
    double feas_min_eig = 0.0;      // min eig of the projection
    double feas_min_eig_pt = 0.0;   // min eig of its partial transpose
    bool converged = false;
    bool hermitized_input = false;
    double max_distance_backstep = 0.0; // monitored drift of the distance trajectory
};

// Dykstra alternating projections between the PSD cone and its partial
// transpose image; converges to the metric projection onto the intersection.
DykstraResult dykstra_project(const ConeVector& xi, const DykstraOptions& opts = {});

// Distance to P_n intersect P_n^tau.
double d_ge(const ConeVector& xi, const DykstraOptions& opts = {});

struct SeesawOptions {
    std::size_t terms = 0;      // 0 = (dA*dB)^2
    std::size_t restarts = 20;
    std::size_t iters = 2000;
    double grad_tol = 1e-12;
};

struct SeparableApprox {
    std::vector<std::vector<cplx>> xs; // product-vector parameters, weights absorbed
    std::vector<std::vector<cplx>> ys;
    double value = 0.0;                // ||xi - sum x x* (x) y y*||_F
    std::size_t restarts_used = 0;
};

ComplexMatrix assemble_separable(const FactorSplit& split,
                                 const std::vector<std::vector<cplx>>& xs,
                                 const std::vector<std::vector<cplx>>& ys);

// Projected-gradient see-saw minimizing the distance to the separable cone;
// the returned value is a certified upper bound on D_e (the approximant is
// feasible by construction).  `init`, when given, joins the restart pool so
// a transported decomposition can be polished instead of rediscovered.
SeparableApprox d_e_upper(const ConeVector& xi, const SeesawOptions& opts, std::uint64_t seed,
                          const SeparableApprox* init = nullptr);

// d_ge is a valid lower bound for D_e (the separable cone sits inside the
// PPT cone intersection).
double d_e_lower(const ConeVector& xi, const DykstraOptions& opts = {});

struct MeasureSandwich {
    double lower = 0.0;
    double upper = 0.0;
};
MeasureSandwich d_e_sandwich(const ConeVector& xi, const SeesawOptions& opts, std::uint64_t seed);

struct OpNormExperiment {
    std::size_t d = 0;
    double min_opnorm_found = 0.0; // over separable S, heuristic
    double opnorm_bound = 0.0;     // 1/6 for d=3 (reference value for the report)
    double de_lower_raw = 0.0;     // sandwich for xi = rho^{1/4} P rho^{1/4}, rho = I/d^2
    double de_upper_raw = 0.0;
    double de_lower_rescaled = 0.0; // raw values times d (distances of P itself)
    double de_upper_rescaled = 0.0;
    double measure_bound = 0.0;     // 1/12 for d=3, 1/8 for d=2
};

// Example experiment around the maximally entangled projector: minimize
// ||P - sum a_i (x) b_i||_op over PSD factors (heuristic, restarts), and
// compute the D_e sandwich for xi = rho^{1/4} P rho^{1/4} with rho = I/d^2.
OpNormExperiment kr_opnorm_experiment(std::size_t d, std::size_t restarts, std::uint64_t seed);

} // namespace pptlab

#endif
