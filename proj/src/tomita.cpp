#include "pptlab/tomita.hpp"

#include <cmath>

#include "pptlab/mapspace.hpp"
#include "pptlab/rng.hpp"

namespace pptlab {

namespace {

bool is_diagonal(const ComplexMatrix& m, double tol) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j && std::abs(m(i, j)) > tol) return false;
    return true;
}

ComplexMatrix power_from_eigs(const HermitianEigen& e, double p) {
    const std::size_t n = e.values.size();
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = std::pow(e.values[i], p);
    return mul(mul(e.vectors, d), e.vectors.adjoint()).hermitize();
}

} // namespace

StandardForm standard_form(const ComplexMatrix& rho) {
    if (!rho.square()) throw dimension_mismatch("standard_form: matrix not square");
    StandardForm sf;
    sf.rho = rho.hermitize();
    sf.eigs = eig_hermitian(sf.rho);
    const double lmax = sf.eigs.values.back();
    if (sf.eigs.values.front() <= 1e-12 * std::max(lmax, 1e-300))
        throw not_faithful("standard_form: density is not faithful");
    sf.diagonal = is_diagonal(sf.rho, 1e-14 * std::max(1.0, sf.rho.max_abs()));
    if (sf.diagonal) {
        sf.s = ComplexMatrix::identity(rho.rows());
        sf.omega = ComplexMatrix(rho.rows(), rho.cols());
        for (std::size_t i = 0; i < rho.rows(); ++i)
            sf.omega(i, i) = std::sqrt(sf.rho(i, i).real());
    } else {
        sf.s = mul(sf.eigs.vectors, sf.eigs.vectors.transpose());
        sf.omega = power_from_eigs(sf.eigs, 0.5);
    }
    return sf;
}

ComplexMatrix delta_power(const StandardForm& sf, const ComplexMatrix& x, double p) {
    if (x.rows() != sf.rho.rows() || x.cols() != sf.rho.cols())
        throw dimension_mismatch("delta_power: shape mismatch");
    if (p == 0.0) return x;
    ComplexMatrix lp = power_from_eigs(sf.eigs, p);
    ComplexMatrix lm = power_from_eigs(sf.eigs, -p);
    return mul(mul(lp, x), lm);
}

ComplexMatrix modular_conjugation(const ComplexMatrix& x) { return x.adjoint(); }

ComplexMatrix vector_conjugation(const StandardForm& sf, const ComplexMatrix& x) {
    if (sf.diagonal) return x.conj();
    return mul(mul(sf.s, x.conj()), sf.s.conj());
}

ComplexMatrix eigenbasis_transpose(const StandardForm& sf, const ComplexMatrix& x) {
    if (sf.diagonal) return x.transpose();
    return mul(mul(sf.s, x.transpose()), sf.s.conj());
}

TranspositionReport verify_transposition_structure(const StandardForm& sf, std::size_t trials,
                                                   std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t d = sf.rho.rows();
    TranspositionReport rep;
    rep.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        ComplexMatrix a = ginibre(d, d, rng);
        a *= cplx(1.0 / std::max(a.frobenius(), 1e-300));
        ComplexMatrix xi = ginibre(d, d, rng);
        xi *= cplx(1.0 / std::max(xi.frobenius(), 1e-300));

        // (1)  a^t xi = J a^* J xi
        ComplexMatrix lhs1 = mul(eigenbasis_transpose(sf, a), xi);
        ComplexMatrix rhs1 =
            vector_conjugation(sf, mul(a.adjoint(), vector_conjugation(sf, xi)));
        rep.max_residual_adjoint_form =
            std::max(rep.max_residual_adjoint_form, (lhs1 - rhs1).frobenius());

        // (2)  tau_0 (a Omega) = a^t Omega = U Delta^{1/2} (a Omega)
        ComplexMatrix lhs2 = mul(eigenbasis_transpose(sf, a), sf.omega);
        ComplexMatrix rhs2 =
            eigenbasis_transpose(sf, delta_power(sf, mul(a, sf.omega), 0.5));
        rep.max_residual_polar_form =
            std::max(rep.max_residual_polar_form, (lhs2 - rhs2).frobenius());
    }
    rep.pass = rep.max_residual_adjoint_form <= 1e-10 && rep.max_residual_polar_form <= 1e-10;
    return rep;
}

ConeContext cone_context(const FactorSplit& split, const ComplexMatrix& rho_a,
                         const ComplexMatrix& rho_b) {
    if (rho_a.rows() != split.dA || rho_b.rows() != split.dB)
        throw dimension_mismatch("cone_context: factor side mismatch");
    const double tol_a = 1e-12 * std::max(1.0, rho_a.max_abs());
    const double tol_b = 1e-12 * std::max(1.0, rho_b.max_abs());
    if (!is_diagonal(rho_a, tol_a) || !is_diagonal(rho_b, tol_b))
        throw bad_parameter(
            "cone_context: reference densities must be diagonal in the computational basis "
            "(rotate with diagonalize_density first)");
    for (std::size_t i = 0; i < split.dA; ++i)
        if (rho_a(i, i).real() <= 1e-12) throw not_faithful("cone_context: rho_A not faithful");
    for (std::size_t i = 0; i < split.dB; ++i)
        if (rho_b(i, i).real() <= 1e-12) throw not_faithful("cone_context: rho_B not faithful");

    ConeContext ctx;
    ctx.split = split;
    ctx.rho_a = rho_a.hermitize();
    ctx.rho_b = rho_b.hermitize();
    ctx.rho = tensor_product(ctx.rho_a, ctx.rho_b);
    const std::size_t n = split.dim();
    ctx.rho_q = ComplexMatrix(n, n);
    ctx.rho_mq = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = ctx.rho(i, i).real();
        ctx.rho_q(i, i) = std::pow(lam, 0.25);
        ctx.rho_mq(i, i) = std::pow(lam, -0.25);
    }
    return ctx;
}

ConeContext uniform_cone_context(const FactorSplit& split) {
    ComplexMatrix a = ComplexMatrix::identity(split.dA);
    a *= cplx(1.0 / static_cast<double>(split.dA));
    ComplexMatrix b = ComplexMatrix::identity(split.dB);
    b *= cplx(1.0 / static_cast<double>(split.dB));
    return cone_context(split, a, b);
}

DiagonalizedDensity diagonalize_density(const ComplexMatrix& rho) {
    HermitianEigen e = eig_hermitian(rho.hermitize());
    DiagonalizedDensity d;
    d.unitary = e.vectors;
    d.diagonal = ComplexMatrix(rho.rows(), rho.rows());
    for (std::size_t i = 0; i < rho.rows(); ++i) d.diagonal(i, i) = e.values[i];
    return d;
}

ConeVector cone_representative(const BipartiteState& sigma) {
    validate_state(sigma);
    return ConeVector{sigma.split, sqrt_psd(sigma.rho)};
}

ConeVector cone_vector_of_operator(const ComplexMatrix& a, const ConeContext& ctx) {
    if (!a.square() || a.rows() != ctx.split.dim())
        throw dimension_mismatch("cone_vector_of_operator: side mismatch");
    EigenExtremes e = eig_extremes(a.hermitize());
    if (e.min_value < -psd_tol_for(e.max_abs))
        throw not_psd("cone_vector_of_operator: operator is not PSD");
    return ConeVector{ctx.split, mul(mul(ctx.rho_q, a), ctx.rho_q)};
}

ComplexMatrix transpose_cone_vector(const ComplexMatrix& xi, const StandardForm& sf) {
    return eigenbasis_transpose(sf, xi);
}

ConeMembership cone_membership(const ConeVector& xi, const ConeContext& ctx) {
    if (xi.split != ctx.split) throw dimension_mismatch("cone_membership: split mismatch");
    ConeMembership m;
    ComplexMatrix x = xi.x.hermitize();
    ComplexMatrix a = mul(mul(ctx.rho_mq, x), ctx.rho_mq).hermitize();

    EigenExtremes ex = eig_extremes(x);
    EigenExtremes ext = eig_extremes(partial_transpose(x, ctx.split, Factor::B).hermitize());
    EigenExtremes ea = eig_extremes(a);
    EigenExtremes eat = eig_extremes(partial_transpose(a, ctx.split, Factor::B).hermitize());

    m.min_eig_x = ex.min_value;
    m.min_eig_x_pt = ext.min_value;
    m.min_eig_a = ea.min_value;
    m.min_eig_a_pt = eat.min_value;
    m.in_pn = ex.min_value >= -psd_tol_for(ex.max_abs);
    m.in_pn_tau = ext.min_value >= -psd_tol_for(ext.max_abs);
    m.in_intersection = m.in_pn && m.in_pn_tau;
    return m;
}

ComparisonRecord compare_characterizations(const BipartiteState& s, const ConeContext& ctx,
                                           std::size_t probes, std::uint64_t seed) {
    validate_state(s);
    if (s.split != ctx.split)
        throw dimension_mismatch("compare_characterizations: split mismatch");
    ComparisonRecord rec;
    rec.density_ppt = is_ppt(s);

    EntanglingOperator h = build_entangling_operator(s);
    auto [fwd, star] = entanglement_maps_from(h);
    (void)fwd;
    CPClassification cls = classify_cp(map_from_entanglement(star));
    rec.phi_star_cp = cls.cp;
    rec.phi_star_co_cp = cls.co_cp;

    ConeVector xi = cone_representative(s);
    rec.sqrt_membership = cone_membership(xi, ctx);
    rec.sandwich_membership =
        cone_membership(ConeVector{s.split, mul(mul(ctx.rho_q, s.rho), ctx.rho_q)}, ctx);

    // omega(a (x) b^t) against (xi, (a (x) 1) xi (1 (x) b^t)); the right side
    // is the vector-level meaning of transposing through the B-side U.
    Rng rng(seed);
    rec.probes = probes;
    for (std::size_t t = 0; t < probes; ++t) {
        ComplexMatrix a = ginibre(s.split.dA, s.split.dA, rng).hermitize();
        a *= cplx(1.0 / std::max(a.frobenius(), 1e-300));
        ComplexMatrix b = ginibre(s.split.dB, s.split.dB, rng).hermitize();
        b *= cplx(1.0 / std::max(b.frobenius(), 1e-300));
        ComplexMatrix abt = tensor_product(a, b.transpose());
        const cplx lhs = mul(s.rho, abt).trace();
        ComplexMatrix a1 = tensor_product(a, ComplexMatrix::identity(s.split.dB));
        ComplexMatrix bt1 = tensor_product(ComplexMatrix::identity(s.split.dA), b.transpose());
        const cplx rhs = mul(mul(mul(xi.x.adjoint(), a1), xi.x), bt1).trace();
        rec.eq_u_residual = std::max(rec.eq_u_residual, std::abs(lhs - rhs));
    }
    return rec;
}

} // namespace pptlab
