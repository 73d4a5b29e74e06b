#include "pptlab/measures.hpp"

#include <algorithm>
#include <cmath>

#include "pptlab/eigen.hpp"
#include "pptlab/parallel.hpp"
#include "pptlab/rng.hpp"
#include "pptlab/states.hpp"

namespace pptlab {

DykstraResult dykstra_project(const ConeVector& xi, const DykstraOptions& opts) {
    const FactorSplit split = xi.split;
    if (!xi.x.square() || xi.x.rows() != split.dim())
        throw dimension_mismatch("dykstra_project: side does not match split");

    DykstraResult res;
    ComplexMatrix target = xi.x;
    if (target.hermiticity_defect() > 1e-12 * std::max(1.0, target.frobenius())) {
        target = target.hermitize();
        res.hermitized_input = true;
    } else {
        target = target.hermitize();
    }
    const double scale = std::max(1.0, target.frobenius());

    ComplexMatrix x = target;
    ComplexMatrix p = ComplexMatrix::zero(x.rows(), x.cols());
    ComplexMatrix q = p;
    double prev_dist = -1.0;
    std::size_t it = 0;
    for (; it < opts.max_iter; ++it) {
        ComplexMatrix y = psd_project((x + p).hermitize());
        p = x + p - y;
        ComplexMatrix z = partial_transpose(
            psd_project(partial_transpose(y + q, split, Factor::B).hermitize()), split,
            Factor::B);
        q = y + q - z;
        const double move = (z - x).frobenius();
        x = z;
        const double dist = (target - x).frobenius();
        if (prev_dist >= 0.0)
            res.max_distance_backstep = std::max(res.max_distance_backstep, prev_dist - dist);
        prev_dist = dist;
        if (move <= opts.tol * scale && it > 0) {
            res.converged = true;
            ++it;
            break;
        }
    }
    res.iterations = it;
    res.projection = ConeVector{split, x};
    res.distance = (target - x).frobenius();
    EigenExtremes e1 = eig_extremes(x.hermitize());
    EigenExtremes e2 = eig_extremes(partial_transpose(x, split, Factor::B).hermitize());
    res.feas_min_eig = e1.min_value;
    res.feas_min_eig_pt = e2.min_value;
    return res;
}

double d_ge(const ConeVector& xi, const DykstraOptions& opts) {
    return dykstra_project(xi, opts).distance;
}

ComplexMatrix assemble_separable(const FactorSplit& split,
                                 const std::vector<std::vector<cplx>>& xs,
                                 const std::vector<std::vector<cplx>>& ys) {
    ComplexMatrix s(split.dim(), split.dim());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const auto& x = xs[k];
        const auto& y = ys[k];
        for (std::size_t i = 0; i < split.dA; ++i)
            for (std::size_t j = 0; j < split.dA; ++j) {
                const cplx xij = x[i] * std::conj(x[j]);
                if (xij == cplx(0.0)) continue;
                for (std::size_t m = 0; m < split.dB; ++m)
                    for (std::size_t nn = 0; nn < split.dB; ++nn)
                        s(i * split.dB + m, j * split.dB + nn) +=
                            xij * y[m] * std::conj(y[nn]);
            }
    }
    return s;
}

namespace {

struct SeesawState {
    std::vector<std::vector<cplx>> xs, ys;
};

double objective(const ComplexMatrix& target, const FactorSplit& split, const SeesawState& st) {
    ComplexMatrix r = assemble_separable(split, st.xs, st.ys) - target;
    const double f = r.frobenius();
    return f * f;
}

// Wirtinger gradients of ||S - target||^2 with respect to conj(x_k), conj(y_k).
void gradients(const ComplexMatrix& target, const FactorSplit& split, const SeesawState& st,
               std::vector<std::vector<cplx>>& gx, std::vector<std::vector<cplx>>& gy) {
    const std::size_t dA = split.dA, dB = split.dB, K = st.xs.size();
    ComplexMatrix r = assemble_separable(split, st.xs, st.ys) - target;
    gx.assign(K, std::vector<cplx>(dA, cplx(0.0)));
    gy.assign(K, std::vector<cplx>(dB, cplx(0.0)));
    for (std::size_t k = 0; k < K; ++k) {
        const auto& x = st.xs[k];
        const auto& y = st.ys[k];
        // A[i][j] = sum_{m,n} R[(i,m),(j,n)] y[n] conj(y[m]); gx = 2 A x
        for (std::size_t i = 0; i < dA; ++i) {
            cplx acc = 0.0;
            for (std::size_t j = 0; j < dA; ++j) {
                cplx aij = 0.0;
                for (std::size_t m = 0; m < dB; ++m)
                    for (std::size_t nn = 0; nn < dB; ++nn)
                        aij += r(i * dB + m, j * dB + nn) * y[nn] * std::conj(y[m]);
                acc += aij * x[j];
            }
            gx[k][i] = 2.0 * acc;
        }
        // B[m][n] = sum_{i,j} R[(i,m),(j,n)] x[j] conj(x[i]); gy = 2 B y
        for (std::size_t m = 0; m < dB; ++m) {
            cplx acc = 0.0;
            for (std::size_t nn = 0; nn < dB; ++nn) {
                cplx bmn = 0.0;
                for (std::size_t i = 0; i < dA; ++i)
                    for (std::size_t j = 0; j < dA; ++j)
                        bmn += r(i * dB + m, j * dB + nn) * x[j] * std::conj(x[i]);
                acc += bmn * y[nn];
            }
            gy[k][m] = 2.0 * acc;
        }
    }
}

double grad_norm2(const std::vector<std::vector<cplx>>& gx,
                  const std::vector<std::vector<cplx>>& gy) {
    double s = 0.0;
    for (const auto& g : gx)
        for (const auto& e : g) s += std::norm(e);
    for (const auto& g : gy)
        for (const auto& e : g) s += std::norm(e);
    return s;
}

double run_descent(const ComplexMatrix& target, const FactorSplit& split, SeesawState& st,
                   std::size_t iters, double grad_tol) {
    double f = objective(target, split, st);
    double step = 0.1;
    std::vector<std::vector<cplx>> gx, gy;
    int stalled = 0;
    for (std::size_t it = 0; it < iters; ++it) {
        gradients(target, split, st, gx, gy);
        const double gn2 = grad_norm2(gx, gy);
        if (gn2 < grad_tol * grad_tol) break;
        bool accepted = false;
        SeesawState trial = st;
        while (step > 1e-18) {
            for (std::size_t k = 0; k < st.xs.size(); ++k) {
                for (std::size_t i = 0; i < st.xs[k].size(); ++i)
                    trial.xs[k][i] = st.xs[k][i] - step * gx[k][i];
                for (std::size_t i = 0; i < st.ys[k].size(); ++i)
                    trial.ys[k][i] = st.ys[k][i] - step * gy[k][i];
            }
            const double f2 = objective(target, split, trial);
            if (f2 <= f - 0.25 * step * gn2) {
                stalled = (f - f2 <= 1e-15 * std::max(1.0, f)) ? stalled + 1 : 0;
                st = trial;
                f = f2;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted || stalled > 30) break;
        step *= 1.3;
    }
    return f;
}

} // namespace

SeparableApprox d_e_upper(const ConeVector& xi, const SeesawOptions& opts, std::uint64_t seed,
                          const SeparableApprox* init) {
    const FactorSplit split = xi.split;
    if (!xi.x.square() || xi.x.rows() != split.dim())
        throw dimension_mismatch("d_e_upper: side does not match split");
    ComplexMatrix target = xi.x.hermitize();
    const std::size_t K = opts.terms ? opts.terms : split.dim() * split.dim();
    const double spread = std::sqrt(std::max(target.frobenius(), 1e-6));

    Rng master(seed);
    const std::size_t total = opts.restarts + (init ? 1 : 0);
    std::vector<SeparableApprox> results(total);
    parallel_for(total, [&](std::size_t r) {
        SeesawState st;
        if (init && r == total - 1) {
            st.xs = init->xs;
            st.ys = init->ys;
            // Pad with zero terms up to K so the parameterization matches.
            while (st.xs.size() < K) {
                st.xs.emplace_back(split.dA, cplx(0.0));
                st.ys.emplace_back(split.dB, cplx(0.0));
            }
        } else {
            Rng rng = master.split(r);
            for (std::size_t k = 0; k < K; ++k) {
                std::vector<cplx> x(split.dA), y(split.dB);
                for (auto& e : x) e = 0.5 * spread * rng.cnormal();
                for (auto& e : y) e = 0.5 * spread * rng.cnormal();
                st.xs.push_back(std::move(x));
                st.ys.push_back(std::move(y));
            }
        }
        const double f = run_descent(target, split, st, opts.iters, opts.grad_tol);
        results[r].xs = std::move(st.xs);
        results[r].ys = std::move(st.ys);
        results[r].value = std::sqrt(std::max(f, 0.0));
    });

    // Deterministic reduction: min by value, ties by restart index.
    std::size_t best = 0;
    for (std::size_t r = 1; r < total; ++r)
        if (results[r].value < results[best].value) best = r;
    SeparableApprox out = std::move(results[best]);
    out.restarts_used = total;
    // Report the exactly-evaluated distance of the assembled approximant.
    out.value = (assemble_separable(split, out.xs, out.ys) - target).frobenius();
    return out;
}

double d_e_lower(const ConeVector& xi, const DykstraOptions& opts) { return d_ge(xi, opts); }

MeasureSandwich d_e_sandwich(const ConeVector& xi, const SeesawOptions& opts,
                             std::uint64_t seed) {
    MeasureSandwich s;
    s.lower = d_e_lower(xi);
    s.upper = d_e_upper(xi, opts, seed).value;
    return s;
}

namespace {

// Dominant eigenpair (by |eigenvalue|) of a Hermitian matrix.
struct Dominant {
    double value_abs;
    double sign;
    std::vector<cplx> vec;
};

Dominant dominant_eig(const ComplexMatrix& m) {
    HermitianEigen e = eig_hermitian(m.hermitize());
    const double lo = e.values.front(), hi = e.values.back();
    Dominant d;
    if (std::abs(lo) > std::abs(hi)) {
        d.value_abs = std::abs(lo);
        d.sign = lo >= 0.0 ? 1.0 : -1.0;
        d.vec = e.vectors.col(0);
    } else {
        d.value_abs = std::abs(hi);
        d.sign = hi >= 0.0 ? 1.0 : -1.0;
        d.vec = e.vectors.col(e.values.size() - 1);
    }
    return d;
}

} // namespace

OpNormExperiment kr_opnorm_experiment(std::size_t d, std::size_t restarts, std::uint64_t seed) {
    if (d != 2 && d != 3) throw bad_parameter("kr_opnorm_experiment: d must be 2 or 3");
    OpNormExperiment exp;
    exp.d = d;
    exp.opnorm_bound = 1.0 / 6.0;
    exp.measure_bound = (d == 3) ? 1.0 / 12.0 : 1.0 / 8.0;

    const FactorSplit split{d, d};
    std::vector<cplx> x2 = max_entangled_vector(d);
    ComplexMatrix proj = ComplexMatrix::outer(x2, x2);
    const std::size_t terms = 2 * d; // k <= 20 per the experiment contract

    Rng master(seed);
    std::vector<double> found(restarts, 1e300);
    parallel_for(restarts, [&](std::size_t r) {
        Rng rng = master.split(r);
        std::vector<ComplexMatrix> gs, hs;
        for (std::size_t k = 0; k < terms; ++k) {
            ComplexMatrix g = ginibre(d, d, rng);
            g *= cplx(0.4);
            ComplexMatrix h = ginibre(d, d, rng);
            h *= cplx(0.4);
            gs.push_back(g);
            hs.push_back(h);
        }
        auto sep = [&]() {
            std::vector<std::vector<cplx>> xs, ys;
            ComplexMatrix s(d * d, d * d);
            for (std::size_t k = 0; k < terms; ++k)
                s += tensor_product(mul(gs[k], gs[k].adjoint()), mul(hs[k], hs[k].adjoint()));
            return s;
        };
        ComplexMatrix diff = proj - sep();
        Dominant dom = dominant_eig(diff);
        double f = dom.value_abs;
        double step = 0.05;
        for (std::size_t it = 0; it < 800; ++it) {
            // Subgradient of ||P - S||_op through the dominant eigenvector:
            // d f = -sign * v^* (dS) v.
            ComplexMatrix vv = ComplexMatrix::outer(dom.vec, dom.vec);
            std::vector<ComplexMatrix> dg(terms), dh(terms);
            for (std::size_t k = 0; k < terms; ++k) {
                ComplexMatrix yk = mul(hs[k], hs[k].adjoint());
                ComplexMatrix xk = mul(gs[k], gs[k].adjoint());
                ComplexMatrix a(d, d), b(d, d);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) {
                        cplx acc = 0.0;
                        for (std::size_t m = 0; m < d; ++m)
                            for (std::size_t nn = 0; nn < d; ++nn)
                                acc += vv(i * d + m, j * d + nn) * yk(nn, m);
                        a(i, j) = acc;
                    }
                for (std::size_t m = 0; m < d; ++m)
                    for (std::size_t nn = 0; nn < d; ++nn) {
                        cplx acc = 0.0;
                        for (std::size_t i = 0; i < d; ++i)
                            for (std::size_t j = 0; j < d; ++j)
                                acc += vv(i * d + m, j * d + nn) * xk(j, i);
                        b(m, nn) = acc;
                    }
                dg[k] = cplx(-dom.sign) * mul(a, gs[k]);
                dh[k] = cplx(-dom.sign) * mul(b, hs[k]);
            }
            double gn2 = 0.0;
            for (std::size_t k = 0; k < terms; ++k) {
                gn2 += dg[k].frobenius() * dg[k].frobenius();
                gn2 += dh[k].frobenius() * dh[k].frobenius();
            }
            if (gn2 < 1e-24) break;
            bool ok = false;
            while (step > 1e-14) {
                std::vector<ComplexMatrix> g2 = gs, h2 = hs;
                for (std::size_t k = 0; k < terms; ++k) {
                    g2[k] -= cplx(step) * dg[k];
                    h2[k] -= cplx(step) * dh[k];
                }
                ComplexMatrix s2(d * d, d * d);
                for (std::size_t k = 0; k < terms; ++k)
                    s2 += tensor_product(mul(g2[k], g2[k].adjoint()),
                                         mul(h2[k], h2[k].adjoint()));
                ComplexMatrix diff2 = proj - s2;
                Dominant dom2 = dominant_eig(diff2);
                if (dom2.value_abs < f) {
                    gs = std::move(g2);
                    hs = std::move(h2);
                    f = dom2.value_abs;
                    dom = dom2;
                    ok = true;
                    break;
                }
                step *= 0.5;
            }
            if (!ok) break;
            step *= 1.2;
        }
        found[r] = f;
    });
    exp.min_opnorm_found = *std::min_element(found.begin(), found.end());

    // Measure sandwich for xi = rho^{1/4} P rho^{1/4} = P/d with rho = I/d^2.
    ComplexMatrix xi_mat = proj;
    xi_mat *= cplx(1.0 / static_cast<double>(d));
    ConeVector xi{split, xi_mat};
    SeesawOptions so;
    so.terms = 3 * d * d; // enough slack for the twirled optimum at these d
    so.restarts = 8;
    so.iters = 1500;
    MeasureSandwich s = d_e_sandwich(xi, so, seed + 101);
    exp.de_lower_raw = s.lower;
    exp.de_upper_raw = s.upper;
    exp.de_lower_rescaled = s.lower * static_cast<double>(d);
    exp.de_upper_rescaled = s.upper * static_cast<double>(d);
    return exp;
}

} // namespace pptlab
