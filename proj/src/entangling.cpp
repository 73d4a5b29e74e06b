#include "pptlab/entangling.hpp"

#include <cmath>

namespace pptlab {

namespace {

void check_unitary(const ComplexMatrix& u, std::size_t n, const char* what) {
    if (!u.square() || u.rows() != n) throw bad_parameter(std::string(what) + ": wrong size");
    ComplexMatrix g = mul(u.adjoint(), u);
    g -= ComplexMatrix::identity(n);
    if (g.frobenius() > 1e-10 * static_cast<double>(n))
        throw bad_parameter(std::string(what) + ": not unitary");
}

bool is_identity(const ComplexMatrix& u) {
    if (!u.square()) return false;
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j)
            if (u(i, j) != (i == j ? cplx(1.0) : cplx(0.0))) return false;
    return true;
}

} // namespace

ComplexMatrix apply_entanglement_map(const EntanglementMap& m, const ComplexMatrix& x) {
    if (!x.square() || x.rows() != m.dim_in)
        throw dimension_mismatch("apply_entanglement_map: input side mismatch");
    ComplexMatrix out(m.dim_out, m.dim_out);
    for (std::size_t i = 0; i < m.dim_in; ++i)
        for (std::size_t j = 0; j < m.dim_in; ++j) {
            const cplx w = x(i, j);
            if (w == cplx(0.0)) continue;
            for (std::size_t k = 0; k < m.dim_out; ++k)
                for (std::size_t l = 0; l < m.dim_out; ++l)
                    out(k, l) += w * m.choi(i * m.dim_out + k, j * m.dim_out + l);
        }
    return out;
}

EntanglingOperator build_entangling_operator(const BipartiteState& s, const ComplexMatrix& basisA,
                                             const ComplexMatrix& basisAB) {
    validate_state(s);
    const std::size_t dA = s.split.dA, dB = s.split.dB, n = dA * dB;

    EntanglingOperator h;
    h.split = s.split;
    h.source_eigs = eig_hermitian(s.rho.hermitize());
    const double lmax = h.source_eigs.values.back();
    canonicalize_degenerate_blocks(h.source_eigs, 1e-8 * std::max(1.0, std::abs(lmax)));

    h.basisA = basisA.size() ? basisA : ComplexMatrix::identity(dA);
    h.basisAB = basisAB.size() ? basisAB : h.source_eigs.vectors;
    check_unitary(h.basisA, dA, "basisA");
    check_unitary(h.basisAB, n, "basisAB");

    const bool defaultA = is_identity(h.basisA);
    const bool defaultAB = (h.basisAB == h.source_eigs.vectors);
    // S = V V^T is the (symmetric unitary) linear part of the basis
    // conjugation J x = S conj(x).
    ComplexMatrix sa, sab;
    if (!defaultA) sa = mul(h.basisA, h.basisA.transpose());
    if (!defaultAB) sab = mul(h.basisAB, h.basisAB.transpose());

    h.matrix = ComplexMatrix(n * dB, dA);
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = std::max(h.source_eigs.values[i], 0.0);
        if (lam == 0.0) continue;
        const double w = std::sqrt(lam);
        std::vector<cplx> ei = h.source_eigs.vectors.col(i);

        // J_{AB} e_i; equals e_i exactly when basisAB is the eigenbasis.
        std::vector<cplx> jei = ei;
        if (!defaultAB) {
            std::vector<cplx> cei(n);
            for (std::size_t u = 0; u < n; ++u) cei[u] = std::conj(ei[u]);
            jei = sab.apply(cei);
        }

        // T_i[l][q] = (Ei^T S_A^*)[l][q] with Ei the dA x dB reshape of e_i.
        ComplexMatrix ti(dB, dA);
        for (std::size_t l = 0; l < dB; ++l)
            for (std::size_t q = 0; q < dA; ++q) {
                if (defaultA) {
                    ti(l, q) = ei[q * dB + l];
                } else {
                    cplx acc = 0.0;
                    for (std::size_t m = 0; m < dA; ++m)
                        acc += ei[m * dB + l] * std::conj(sa(m, q));
                    ti(l, q) = acc;
                }
            }

        for (std::size_t u = 0; u < n; ++u) {
            if (jei[u] == cplx(0.0)) continue;
            for (std::size_t l = 0; l < dB; ++l)
                for (std::size_t q = 0; q < dA; ++q)
                    h.matrix(u * dB + l, q) += w * jei[u] * ti(l, q);
        }
    }
    return h;
}

ComplexMatrix jh_transpose(const EntanglingOperator& h, const ComplexMatrix& a) {
    if (!a.square() || a.rows() != h.split.dA)
        throw dimension_mismatch("jh_transpose: side mismatch");
    if (is_identity(h.basisA)) return a.transpose();
    ComplexMatrix sa = mul(h.basisA, h.basisA.transpose());
    return mul(mul(sa, a.transpose()), sa.conj());
}

ComplexMatrix apply_phi_star(const EntanglingOperator& h, const ComplexMatrix& a) {
    ComplexMatrix at = jh_transpose(h, a);
    ComplexMatrix m = mul(mul(h.matrix, at), h.matrix.adjoint());
    // Trace out the first factor (H (x) K), leaving the trailing K.
    return partial_trace(m, FactorSplit{h.split.dim(), h.split.dB}, Factor::A);
}

ComplexMatrix apply_phi(const EntanglingOperator& h, const ComplexMatrix& b) {
    if (!b.square() || b.rows() != h.split.dB)
        throw dimension_mismatch("apply_phi: side mismatch");
    ComplexMatrix oneb = tensor_product(ComplexMatrix::identity(h.split.dim()), b);
    ComplexMatrix core = mul(mul(h.matrix.adjoint(), oneb), h.matrix);
    return jh_transpose(h, core); // same conjugation transposes B(H_A)
}

ComplexMatrix phi_star_closed_form(const BipartiteState& s, const ComplexMatrix& a) {
    if (!a.square() || a.rows() != s.split.dA)
        throw dimension_mismatch("phi_star_closed_form: side mismatch");
    ComplexMatrix lifted = tensor_product(a, ComplexMatrix::identity(s.split.dB));
    return partial_trace(mul(lifted, s.rho), s.split, Factor::A);
}

std::pair<EntanglementMap, EntanglementMap> entanglement_maps_from(const EntanglingOperator& h) {
    const std::size_t dA = h.split.dA, dB = h.split.dB;
    EntanglementMap star{MapDirection::phi_star, dA, dB, ComplexMatrix(dA * dB, dA * dB)};
    for (std::size_t i = 0; i < dA; ++i)
        for (std::size_t j = 0; j < dA; ++j) {
            ComplexMatrix block = apply_phi_star(h, ComplexMatrix::unit(dA, i, j));
            for (std::size_t k = 0; k < dB; ++k)
                for (std::size_t l = 0; l < dB; ++l)
                    star.choi(i * dB + k, j * dB + l) = block(k, l);
        }
    EntanglementMap fwd{MapDirection::phi, dB, dA, ComplexMatrix(dA * dB, dA * dB)};
    for (std::size_t k = 0; k < dB; ++k)
        for (std::size_t l = 0; l < dB; ++l) {
            ComplexMatrix block = apply_phi(h, ComplexMatrix::unit(dB, k, l));
            for (std::size_t i = 0; i < dA; ++i)
                for (std::size_t j = 0; j < dA; ++j)
                    fwd.choi(k * dA + i, l * dA + j) = block(i, j);
        }
    return {fwd, star};
}

ResidualReport verify_representation(const BipartiteState& s, std::size_t samples,
                                     std::uint64_t seed) {
    EntanglingOperator h = build_entangling_operator(s);
    Rng rng(seed);
    ResidualReport rep;
    rep.samples = samples;
    rep.tolerance = 1e-9;
    for (std::size_t t = 0; t < samples; ++t) {
        ComplexMatrix a = ginibre(s.split.dA, s.split.dA, rng);
        ComplexMatrix b = ginibre(s.split.dB, s.split.dB, rng);
        a *= cplx(1.0 / std::max(a.frobenius(), 1e-300));
        b *= cplx(1.0 / std::max(b.frobenius(), 1e-300));

        const cplx lhs = mul(s.rho, tensor_product(a, b)).trace();
        ComplexMatrix oneb = tensor_product(ComplexMatrix::identity(s.split.dim()), b);
        const cplx rhs =
            mul(jh_transpose(h, a), mul(mul(h.matrix.adjoint(), oneb), h.matrix)).trace();
        rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs));
    }
    rep.pass = rep.max_residual <= rep.tolerance;
    return rep;
}

ComplexMatrix phi_star_of_pure(const std::vector<cplx>& x, const FactorSplit& split,
                               const ComplexMatrix& a) {
    BipartiteState s{split, ComplexMatrix::outer(x, x)};
    return phi_star_closed_form(s, a);
}

std::pair<EntanglementMap, EntanglementMap> example_maximally_entangled_maps() {
    const FactorSplit split{3, 3};
    const double r3 = 1.0 / std::sqrt(3.0);
    // x1 = (e1 f2 - e2 f3 - e3 f1)/sqrt(3), x2 = (e1 f1 + e2 f2 + e3 f3)/sqrt(3)
    std::vector<cplx> x1(9, cplx(0.0)), x2(9, cplx(0.0));
    x1[0 * 3 + 1] = r3;
    x1[1 * 3 + 2] = -r3;
    x1[2 * 3 + 0] = -r3;
    for (std::size_t i = 0; i < 3; ++i) x2[i * 3 + i] = r3;

    auto make = [&](const std::vector<cplx>& x) {
        EntanglementMap m{MapDirection::phi_star, 3, 3, ComplexMatrix(9, 9)};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                ComplexMatrix block = phi_star_of_pure(x, split, ComplexMatrix::unit(3, i, j));
                for (std::size_t k = 0; k < 3; ++k)
                    for (std::size_t l = 0; l < 3; ++l)
                        m.choi(i * 3 + k, j * 3 + l) = block(k, l);
            }
        return m;
    };
    return {make(x1), make(x2)};
}

CPViolationWitness cp_violation_witness_pure(const std::vector<cplx>& x,
                                             const FactorSplit& split) {
    if (x.size() != split.dim()) throw dimension_mismatch("witness: vector length mismatch");
    const std::size_t dA = split.dA, dB = split.dB;

    // Schmidt data from the Gram matrix of the dA x dB reshape.
    ComplexMatrix xm(dA, dB);
    for (std::size_t m = 0; m < dA; ++m)
        for (std::size_t nn = 0; nn < dB; ++nn) xm(m, nn) = x[m * dB + nn];
    HermitianEigen g = eig_hermitian(mul(xm, xm.adjoint()).hermitize());

    // Descending singular values; left vectors u_k, B-side vectors y_k.
    std::vector<double> sv;
    std::vector<std::vector<cplx>> us, ys;
    for (std::size_t k = g.values.size(); k-- > 0;) {
        const double s = std::sqrt(std::max(g.values[k], 0.0));
        std::vector<cplx> u = g.vectors.col(k);
        sv.push_back(s);
        us.push_back(u);
        if (s > 1e-14) {
            std::vector<cplx> z = xm.adjoint().apply(u); // z_k = X^* u_k / s
            for (auto& e : z) e = std::conj(e) / s;      // y_k = conj(z_k)
            ys.push_back(z);
        } else {
            ys.push_back(std::vector<cplx>(dB, cplx(0.0)));
        }
    }
    if (sv.size() < 2 || sv[1] <= 1e-10 * std::max(sv[0], 1e-300))
        throw not_entangled("witness: vector has Schmidt rank 1");

    const std::size_t k = 0, l = 1;
    CPViolationWitness w;
    w.k = k;
    w.l = l;
    w.predicted = -2.0 * sv[k] * sv[l]; // coefficients are real positive here

    // Psi_- = e_k (x) y_l - e_l (x) y_k, indices in the Schmidt basis.
    w.psi.assign(dA * dB, cplx(0.0));
    for (std::size_t nn = 0; nn < dB; ++nn) {
        w.psi[k * dB + nn] += ys[l][nn];
        w.psi[l * dB + nn] -= ys[k][nn];
    }

    // Direct evaluation of (Psi, sum_ij E_ij (x) phi*(|u_i><u_j|) Psi).
    ComplexMatrix form(dA * dB, dA * dB);
    for (std::size_t i = 0; i < dA; ++i)
        for (std::size_t j = 0; j < dA; ++j) {
            ComplexMatrix block = phi_star_of_pure(x, split, ComplexMatrix::outer(us[i], us[j]));
            for (std::size_t p = 0; p < dB; ++p)
                for (std::size_t q = 0; q < dB; ++q)
                    form(i * dB + p, j * dB + q) = block(p, q);
        }
    w.value = inner(w.psi, form.apply(w.psi)).real();
    return w;
}

} // namespace pptlab
