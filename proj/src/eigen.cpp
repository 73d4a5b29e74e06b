#include "pptlab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pptlab {

double& psd_tol_scale() {
    static double scale = 1e-9;
    return scale;
}

double psd_tol_for(double op_norm) { return psd_tol_scale() * std::max(1.0, op_norm); }

namespace {

double offdiag_mass(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = 0; q < a.cols(); ++q)
            if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
}

// Phase-fix each eigenvector: first component of magnitude above cutoff is
// rotated to the positive real axis.
void fix_phases(ComplexMatrix& v) {
    const std::size_t n = v.rows();
    for (std::size_t k = 0; k < v.cols(); ++k) {
        double mx = 0.0;
        for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, std::abs(v(i, k)));
        if (mx == 0.0) continue;
        const double cutoff = 1e-12 * mx;
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(v(i, k));
            if (m > cutoff) {
                const cplx ph = std::conj(v(i, k)) / m;
                for (std::size_t r = 0; r < n; ++r) v(r, k) *= ph;
                break;
            }
        }
    }
}

} // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
    if (!m.square()) throw dimension_mismatch("eig_hermitian: matrix not square");
    const std::size_t n = m.rows();
    const double fnorm = m.frobenius();
    if (m.hermiticity_defect() > 1e-12 * std::max(fnorm, 1e-300))
        throw not_hermitian("eig_hermitian: asymmetry exceeds 1e-12 * ||M||_F");

    ComplexMatrix a = m.hermitize();
    ComplexMatrix v = ComplexMatrix::identity(n);

    if (n > 1 && fnorm > 0.0) {
        const double target = 1e-13 * fnorm;
        bool converged = false;
        for (int sweep = 0; sweep < 100; ++sweep) {
            if (offdiag_mass(a) <= target) {
                converged = true;
                break;
            }
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const cplx beta = a(p, q);
                    const double babs = std::abs(beta);
                    if (babs == 0.0) continue;
                    const double alpha = a(p, p).real();
                    const double gamma = a(q, q).real();
                    const double tau = (gamma - alpha) / (2.0 * babs);
                    double t;
                    if (tau >= 0.0)
                        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                    else
                        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const cplx sigma = (s / babs) * beta; // s * e^{i arg beta}

                    // A <- U^* A U with U = [[c, sigma], [-conj(sigma), c]]
                    for (std::size_t i = 0; i < n; ++i) {
                        const cplx aip = a(i, p), aiq = a(i, q);
                        a(i, p) = c * aip - std::conj(sigma) * aiq;
                        a(i, q) = sigma * aip + c * aiq;
                    }
                    for (std::size_t j = 0; j < n; ++j) {
                        const cplx apj = a(p, j), aqj = a(q, j);
                        a(p, j) = c * apj - sigma * aqj;
                        a(q, j) = std::conj(sigma) * apj + c * aqj;
                    }
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    a(p, p) = cplx(a(p, p).real(), 0.0);
                    a(q, q) = cplx(a(q, q).real(), 0.0);

                    for (std::size_t i = 0; i < n; ++i) {
                        const cplx vip = v(i, p), viq = v(i, q);
                        v(i, p) = c * vip - std::conj(sigma) * viq;
                        v(i, q) = sigma * vip + c * viq;
                    }
                }
            }
        }
        if (!converged && offdiag_mass(a) > target)
            throw no_convergence("eig_hermitian: Jacobi sweep cap reached");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    HermitianEigen out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    fix_phases(out.vectors);
    return out;
}

ComplexMatrix reconstruct(const HermitianEigen& e) {
    const std::size_t n = e.values.size();
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = e.values[i];
    return mul(mul(e.vectors, d), e.vectors.adjoint());
}

EigenExtremes eig_extremes(const ComplexMatrix& hermitian) {
    HermitianEigen e = eig_hermitian(hermitian);
    EigenExtremes x;
    x.min_value = e.values.front();
    x.min_vector = e.vectors.col(0);
    x.max_abs = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    return x;
}

bool is_psd(const ComplexMatrix& hermitian) {
    EigenExtremes x = eig_extremes(hermitian);
    return x.min_value >= -psd_tol_for(x.max_abs);
}

ComplexMatrix frac_power(const ComplexMatrix& m, double p) {
    HermitianEigen e = eig_hermitian(m);
    const double lmax = e.values.empty() ? 0.0 : e.values.back();
    if (!e.values.empty() && e.values.front() < -psd_tol_for(std::max(std::abs(e.values.front()), std::abs(lmax))))
        throw not_psd("frac_power: matrix is not PSD within tolerance");
    const double cutoff = 1e-12 * std::max(lmax, 0.0);
    const std::size_t n = e.values.size();
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = e.values[i];
        d(i, i) = (lam <= cutoff) ? 0.0 : std::pow(lam, p);
    }
    return mul(mul(e.vectors, d), e.vectors.adjoint()).hermitize();
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) { return frac_power(m, 0.5); }

ComplexMatrix psd_project(const ComplexMatrix& hermitian) {
    const double fn = hermitian.frobenius();
    if (hermitian.hermiticity_defect() > 1e-12 * std::max(fn, 1e-300))
        throw not_hermitian("psd_project: input not Hermitian");
    HermitianEigen e = eig_hermitian(hermitian);
    const std::size_t n = e.values.size();
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = std::max(e.values[i], 0.0);
    return mul(mul(e.vectors, d), e.vectors.adjoint()).hermitize();
}

MatrixNorms norms(const ComplexMatrix& m) {
    MatrixNorms out{0.0, 0.0, m.frobenius()};
    if (m.size() == 0 || out.frobenius == 0.0) return out;
    // Singular values via the Gram matrix; dims are small enough that the
    // squared condition number does not bite at our tolerances.
    ComplexMatrix gram = mul(m.adjoint(), m).hermitize();
    HermitianEigen e = eig_hermitian(gram);
    for (double lam : e.values) {
        const double s = std::sqrt(std::max(lam, 0.0));
        out.trace += s;
        out.op = std::max(out.op, s);
    }
    return out;
}

std::array<ComplexMatrix, 4> jordan_decompose(const ComplexMatrix& a) {
    if (!a.square()) throw dimension_mismatch("jordan_decompose: matrix not square");
    ComplexMatrix h = a.hermitize();
    ComplexMatrix k(a.rows(), a.cols());
    // k = (a - a^*) / 2i, the Hermitian imaginary part
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            k(i, j) = (a(i, j) - std::conj(a(j, i))) / cplx(0.0, 2.0);
    ComplexMatrix hp = psd_project(h);
    ComplexMatrix hm = psd_project(cplx(-1.0) * h);
    ComplexMatrix kp = psd_project(k);
    ComplexMatrix km = psd_project(cplx(-1.0) * k);
    return {hp, hm, kp, km};
}

void canonicalize_degenerate_blocks(HermitianEigen& e, double block_tol) {
    const std::size_t n = e.values.size();
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && std::abs(e.values[end] - e.values[start]) <= block_tol) ++end;
        if (end - start > 1) {
            // Modified Gram-Schmidt over the block in index order.
            for (std::size_t k = start; k < end; ++k) {
                std::vector<cplx> vk = e.vectors.col(k);
                for (std::size_t j = start; j < k; ++j) {
                    std::vector<cplx> vj = e.vectors.col(j);
                    cplx ov = inner(vj, vk);
                    for (std::size_t i = 0; i < n; ++i) vk[i] -= ov * vj[i];
                }
                normalize(vk);
                e.vectors.set_col(k, vk);
            }
        }
        start = end;
    }
    fix_phases(e.vectors);
}

} // namespace pptlab
