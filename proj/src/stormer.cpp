#include "pptlab/stormer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pptlab/eigen.hpp"

namespace pptlab {

ComplexMatrix pseudo_inverse(const ComplexMatrix& a) {
    // pinv(A) = A^* (A A^*)^+
    ComplexMatrix gram = mul(a, a.adjoint()).hermitize();
    return mul(a.adjoint(), frac_power(gram, -1.0));
}

namespace {

ComplexMatrix assemble_block(const ComplexMatrix& b11, const ComplexMatrix& b12,
                             const ComplexMatrix& b21, const ComplexMatrix& b22) {
    const std::size_t d = b11.rows();
    ComplexMatrix out(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            out(i, j) = b11(i, j);
            out(i, d + j) = b12(i, j);
            out(d + i, j) = b21(i, j);
            out(d + i, d + j) = b22(i, j);
        }
    return out;
}

} // namespace

ComplexMatrix stormer_block(const StormerPair& p) {
    return assemble_block(mul(p.a1.adjoint(), p.a1), mul(p.a1.adjoint(), p.a2),
                          mul(p.a2.adjoint(), p.a1), mul(p.a2.adjoint(), p.a2));
}

ComplexMatrix stormer_block_transposed(const StormerPair& p) {
    return assemble_block(mul(p.a1.adjoint(), p.a1), mul(p.a2.adjoint(), p.a1),
                          mul(p.a1.adjoint(), p.a2), mul(p.a2.adjoint(), p.a2));
}

StormerCondition stormer_condition(const StormerPair& p) {
    if (!p.a1.square() || !p.a2.square() || p.a1.rows() != p.a2.rows())
        throw dimension_mismatch("stormer_condition: a1, a2 must be square of equal side");
    EigenExtremes e1 = eig_extremes(stormer_block(p).hermitize());
    EigenExtremes e2 = eig_extremes(stormer_block_transposed(p).hermitize());
    StormerCondition c;
    c.min_eig_block = e1.min_value;
    c.min_eig_transposed = e2.min_value;
    c.block_psd = e1.min_value >= -psd_tol_for(e1.max_abs);
    c.transposed_psd = e2.min_value >= -psd_tol_for(e2.max_abs);
    return c;
}

ZhanResult zhan_factor(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
    if (!a.square() || !b.square() || !c.square() || a.rows() != b.rows() || b.rows() != c.rows())
        throw dimension_mismatch("zhan_factor: blocks must be square of equal side");
    ComplexMatrix ah = sqrt_psd(a.hermitize()); // throws not_psd on bad input
    ComplexMatrix ch = sqrt_psd(c.hermitize());
    ZhanResult r;
    r.w = mul(mul(pseudo_inverse(ah), b), pseudo_inverse(ch));
    r.w_norm = norms(r.w).op;
    r.is_contraction = r.w_norm <= 1.0 + 1e-9;
    r.factor_residual = (b - mul(mul(ah, r.w), ch)).frobenius();
    EigenExtremes e = eig_extremes(
        assemble_block(a.hermitize(), b, b.adjoint(), c.hermitize()).hermitize());
    r.block_min_eig = e.min_value;
    r.block_psd = e.min_value >= -psd_tol_for(e.max_abs);
    return r;
}

NormalEigen eig_normal(const ComplexMatrix& n) {
    if (!n.square()) throw dimension_mismatch("eig_normal: matrix not square");
    const std::size_t d = n.rows();
    // Simultaneous diagonalization of the commuting Hermitian parts
    // H1 = (N + N*)/2 and H2 = (N - N*)/2i.
    ComplexMatrix h1 = n.hermitize();
    ComplexMatrix h2(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            h2(i, j) = (n(i, j) - std::conj(n(j, i))) / cplx(0.0, 2.0);

    HermitianEigen e1 = eig_hermitian(h1);
    const double scale = std::max({1.0, std::abs(e1.values.front()), std::abs(e1.values.back())});
    ComplexMatrix basis = e1.vectors;

    std::size_t start = 0;
    while (start < d) {
        std::size_t end = start + 1;
        while (end < d && std::abs(e1.values[end] - e1.values[start]) <= 1e-8 * scale) ++end;
        const std::size_t w = end - start;
        if (w > 1) {
            // Diagonalize H2 restricted to the degenerate block of H1.
            ComplexMatrix blockv(d, w);
            for (std::size_t k = 0; k < w; ++k) blockv.set_col(k, basis.col(start + k));
            ComplexMatrix sub = mul(mul(blockv.adjoint(), h2), blockv).hermitize();
            HermitianEigen e2 = eig_hermitian(sub);
            ComplexMatrix rotated = mul(blockv, e2.vectors);
            for (std::size_t k = 0; k < w; ++k) basis.set_col(start + k, rotated.col(k));
        }
        start = end;
    }

    NormalEigen out;
    out.vectors = ComplexMatrix(d, d);
    std::vector<cplx> vals(d);
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<cplx> v = basis.col(k);
        vals[k] = inner(v, n.apply(v));
    }
    // Order by (|lambda|, arg lambda) lexicographic.
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const double mx = std::abs(vals[x]), my = std::abs(vals[y]);
        if (std::abs(mx - my) > 1e-14 * std::max(1.0, std::max(mx, my))) return mx < my;
        return std::arg(vals[x]) < std::arg(vals[y]);
    });
    out.values.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        out.values[k] = vals[order[k]];
        out.vectors.set_col(k, basis.col(order[k]));
    }
    return out;
}

StormerDecomposition canonical_decomposition(const StormerPair& p) {
    StormerCondition cond = stormer_condition(p);
    if (!cond.holds()) {
        std::ostringstream os;
        os << "canonical_decomposition: Stormer condition fails (min eigs " << cond.min_eig_block
           << ", " << cond.min_eig_transposed << ")";
        throw condition_fails(os.str());
    }
    const std::size_t d = p.a1.rows();

    StormerDecomposition dec;
    ComplexMatrix a1_pinv = pseudo_inverse(p.a1);
    dec.partial = norms(mul(p.a1, a1_pinv) - ComplexMatrix::identity(d)).op > 1e-8;
    dec.n = mul(p.a2, a1_pinv);

    const double nsq = norms(dec.n).op;
    ComplexMatrix comm = mul(dec.n, dec.n.adjoint()) - mul(dec.n.adjoint(), dec.n);
    if (dec.partial) {
        // Rank-deficient a1: normality is only meaningful on range(a1).
        ComplexMatrix range_proj = mul(p.a1, a1_pinv).hermitize();
        comm = mul(mul(range_proj, comm), range_proj);
    }
    dec.normality_residual = comm.frobenius();
    if (dec.normality_residual > 1e-8 * std::max(nsq * nsq, 1e-12)) {
        std::ostringstream os;
        os << "canonical_decomposition: a2 a1^+ is not normal, ||[N,N*]||_F = "
           << dec.normality_residual << " with ||N||^2 = " << nsq * nsq;
        throw normality_fails(os.str());
    }

    NormalEigen ne = eig_normal(dec.n);
    dec.lambdas = ne.values;
    ComplexMatrix a2_rec(d, d);
    ComplexMatrix block_rec(2 * d, 2 * d);
    ComplexMatrix sep_rec(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<cplx> e = ne.vectors.col(i);
        dec.e_vectors.push_back(e);
        std::vector<cplx> a1e = p.a1.adjoint().apply(e);
        const double alpha = norm2(a1e);
        dec.alphas.push_back(alpha);
        std::vector<cplx> phi(d, cplx(0.0));
        if (alpha > 0.0)
            for (std::size_t r = 0; r < d; ++r) phi[r] = a1e[r] / alpha;
        dec.phis.push_back(phi);

        const cplx lam = ne.values[i];
        a2_rec += lam * ComplexMatrix::outer(e, a1e);
        if (alpha > 0.0) {
            ComplexMatrix lam2 = ComplexMatrix::from_rows(
                {{cplx(1.0), lam}, {std::conj(lam), cplx(std::norm(lam))}});
            ComplexMatrix pphi = ComplexMatrix::outer(phi, phi);
            block_rec += cplx(alpha * alpha) * tensor_product(lam2, pphi);
            // Corollary form: alpha^2 (1+|lam|^2) (P (x) 1)(1 (x) |phi><phi|)
            ComplexMatrix proj = lam2;
            proj *= cplx(1.0 / (1.0 + std::norm(lam)));
            ComplexMatrix left = tensor_product(proj, ComplexMatrix::identity(d));
            ComplexMatrix right = tensor_product(ComplexMatrix::identity(2), pphi);
            sep_rec += cplx(alpha * alpha * (1.0 + std::norm(lam))) * mul(left, right);
        }
    }
    ComplexMatrix block = stormer_block(p);
    dec.residual_a2 = (p.a2 - a2_rec).frobenius();
    dec.residual_block = (block - block_rec).frobenius();
    dec.residual_separable = (block - sep_rec).frobenius();
    return dec;
}

ComplexMatrix random_normal_matrix(std::size_t d, Rng& rng) {
    ComplexMatrix u = haar_unitary(d, rng);
    ComplexMatrix lam(d, d);
    for (std::size_t i = 0; i < d; ++i) lam(i, i) = rng.cnormal() * std::sqrt(2.0);
    return mul(mul(u, lam), u.adjoint());
}

} // namespace pptlab
