#include "pptlab/states.hpp"

#include <cmath>

namespace pptlab {

void validate_state(const BipartiteState& s) {
    if (!s.rho.square() || s.rho.rows() != s.split.dim())
        throw not_a_state("state matrix side does not match split");
    if (!s.rho.all_finite()) throw not_a_state("state has non-finite entries");
    const double fn = s.rho.frobenius();
    if (s.rho.hermiticity_defect() > 1e-10 * std::max(1.0, fn))
        throw not_a_state("state is not Hermitian");
    if (std::abs(s.rho.trace().real() - 1.0) > 1e-10 || std::abs(s.rho.trace().imag()) > 1e-10)
        throw not_a_state("state trace is not 1");
    EigenExtremes x = eig_extremes(s.rho.hermitize());
    if (x.min_value < -psd_tol_for(x.max_abs)) throw not_a_state("state is not PSD");
}

PPTVerdict is_ppt(const BipartiteState& s) {
    validate_state(s);
    ComplexMatrix pt = partial_transpose(s.rho, s.split, Factor::B);
    EigenExtremes x = eig_extremes(pt.hermitize());
    PPTVerdict v;
    v.min_eig = x.min_value;
    v.witness = x.min_vector;
    v.is_ppt = x.min_value >= -psd_tol_for(x.max_abs);
    return v;
}

std::vector<cplx> max_entangled_vector(std::size_t d) {
    std::vector<cplx> v(d * d, cplx(0.0));
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
    return v;
}

BipartiteState isotropic(std::size_t d, double p) {
    if (d < 2) throw bad_parameter("isotropic: d must be >= 2");
    if (p < 0.0 || p > 1.0) throw bad_parameter("isotropic: p must be in [0, 1]");
    std::vector<cplx> phi = max_entangled_vector(d);
    ComplexMatrix rho = ComplexMatrix::outer(phi, phi);
    rho *= cplx(p);
    const double bg = (1.0 - p) / static_cast<double>(d * d);
    for (std::size_t i = 0; i < d * d; ++i) rho(i, i) += bg;
    return {FactorSplit{d, d}, rho};
}

BipartiteState random_pure_bipartite(const FactorSplit& split, const SchmidtSpec& spec,
                                     std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cplx> x;
    if (spec.haar) {
        x = random_unit_vector(split.dim(), rng);
    } else {
        const std::size_t r = spec.coefficients.size();
        if (r == 0 || r > std::min(split.dA, split.dB))
            throw bad_parameter("schmidt list length must be in [1, min(dA,dB)]");
        double s2 = 0.0;
        for (double c : spec.coefficients) {
            if (c < 0.0) throw bad_parameter("schmidt coefficients must be nonnegative");
            s2 += c * c;
        }
        if (std::abs(s2 - 1.0) > 1e-9)
            throw bad_parameter("schmidt coefficients must have squared sum 1");
        ComplexMatrix u = haar_unitary(split.dA, rng);
        ComplexMatrix v = haar_unitary(split.dB, rng);
        x.assign(split.dim(), cplx(0.0));
        for (std::size_t k = 0; k < r; ++k) {
            std::vector<cplx> t = tensor_product(u.col(k), v.col(k));
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += spec.coefficients[k] * t[i];
        }
    }
    return {split, ComplexMatrix::outer(x, x)};
}

ComplexMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    if (rank == 0 || rank > dim) throw bad_parameter("random_density: rank must be in [1, dim]");
    Rng rng(seed);
    return random_psd(dim, rank, rng, /*unit_trace=*/true);
}

SeparableState random_separable(const FactorSplit& split, std::size_t terms, std::uint64_t seed) {
    if (terms < 1) throw bad_parameter("random_separable: terms must be >= 1");
    Rng rng(seed);
    SeparableState out;
    out.state.split = split;
    out.state.rho = ComplexMatrix::zero(split.dim(), split.dim());
    // Uniform simplex weights via exponential normalization.
    double wsum = 0.0;
    for (std::size_t t = 0; t < terms; ++t) {
        double u = rng.uniform();
        while (u <= 1e-300) u = rng.uniform();
        out.weights.push_back(-std::log(u));
        wsum += out.weights.back();
    }
    for (auto& w : out.weights) w /= wsum;
    for (std::size_t t = 0; t < terms; ++t) {
        out.xs.push_back(random_unit_vector(split.dA, rng));
        out.ys.push_back(random_unit_vector(split.dB, rng));
        std::vector<cplx> prod = tensor_product(out.xs.back(), out.ys.back());
        ComplexMatrix term = ComplexMatrix::outer(prod, prod);
        term *= cplx(out.weights[t]);
        out.state.rho += term;
    }
    return out;
}

ComplexMatrix random_faithful_density(std::size_t dim, std::uint64_t seed, double min_weight) {
    Rng rng(seed);
    ComplexMatrix u = haar_unitary(dim, rng);
    // Eigenvalues: min_weight floor plus random mass, normalized.
    std::vector<double> w(dim);
    double s = 0.0;
    for (auto& x : w) {
        x = min_weight + rng.uniform();
        s += x;
    }
    ComplexMatrix d(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) d(i, i) = w[i] / s;
    return mul(mul(u, d), u.adjoint()).hermitize();
}

} // namespace pptlab
