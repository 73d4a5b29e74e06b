#include "pptlab/mapspace.hpp"

#include <cmath>

#include "pptlab/eigen.hpp"
#include "pptlab/rng.hpp"

namespace pptlab {

LinearMap map_from_choi(std::size_t dim_in, std::size_t dim_out, ComplexMatrix choi) {
    if (!choi.square() || choi.rows() != dim_in * dim_out)
        throw dimension_mismatch("map_from_choi: Choi side mismatch");
    return LinearMap{dim_in, dim_out, std::move(choi)};
}

LinearMap map_from_action(std::size_t dim_in, std::size_t dim_out,
                          const std::function<ComplexMatrix(const ComplexMatrix&)>& action) {
    ComplexMatrix choi(dim_in * dim_out, dim_in * dim_out);
    for (std::size_t i = 0; i < dim_in; ++i)
        for (std::size_t j = 0; j < dim_in; ++j) {
            ComplexMatrix block = action(ComplexMatrix::unit(dim_in, i, j));
            if (!block.square() || block.rows() != dim_out)
                throw dimension_mismatch("map_from_action: action output side mismatch");
            for (std::size_t k = 0; k < dim_out; ++k)
                for (std::size_t l = 0; l < dim_out; ++l)
                    choi(i * dim_out + k, j * dim_out + l) = block(k, l);
        }
    return LinearMap{dim_in, dim_out, std::move(choi)};
}

LinearMap map_from_kraus(std::size_t dim_in, std::size_t dim_out,
                         const std::vector<ComplexMatrix>& factors) {
    for (const auto& v : factors)
        if (v.rows() != dim_out || v.cols() != dim_in)
            throw dimension_mismatch("map_from_kraus: factor shape mismatch");
    return map_from_action(dim_in, dim_out, [&](const ComplexMatrix& x) {
        ComplexMatrix out(dim_out, dim_out);
        for (const auto& v : factors) out += mul(mul(v, x), v.adjoint());
        return out;
    });
}

LinearMap map_from_entanglement(const EntanglementMap& m) {
    return LinearMap{m.dim_in, m.dim_out, m.choi};
}

LinearMap identity_map(std::size_t d) {
    return map_from_action(d, d, [](const ComplexMatrix& x) { return x; });
}

LinearMap transposition_map(std::size_t d) {
    return map_from_action(d, d, [](const ComplexMatrix& x) { return x.transpose(); });
}

ComplexMatrix apply_map(const LinearMap& m, const ComplexMatrix& x) {
    if (!x.square() || x.rows() != m.dim_in) throw dimension_mismatch("apply_map: side mismatch");
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

CPClassification classify_cp(const LinearMap& m) {
    EigenExtremes a = eig_extremes(m.choi.hermitize());
    ComplexMatrix co = partial_transpose(m.choi, m.choi_split(), Factor::B);
    EigenExtremes b = eig_extremes(co.hermitize());
    CPClassification c;
    c.min_choi_eig = a.min_value;
    c.min_cochoi_eig = b.min_value;
    c.cp = a.min_value >= -psd_tol_for(a.max_abs);
    c.co_cp = b.min_value >= -psd_tol_for(b.max_abs);
    return c;
}

namespace {

// Value and optimal-y step data for the positivity see-saw.
double positivity_value(const LinearMap& m, const std::vector<cplx>& x,
                        const std::vector<cplx>& y) {
    ComplexMatrix a = apply_map(m, ComplexMatrix::outer(x, x)).hermitize();
    return inner(y, a.apply(y)).real();
}

} // namespace

PositivityVerdict is_positive_map(const LinearMap& m, const SearchBudget& budget,
                                  std::uint64_t seed) {
    if (m.dim_in == 0) throw bad_parameter("is_positive_map: empty map");
    Rng master(seed);
    PositivityVerdict best;
    best.status = PositiveStatus::no_violation_found;
    best.min_value = 1e300;

    for (std::size_t s = 0; s < budget.starts; ++s) {
        Rng rng = master.split(s);
        std::vector<cplx> x = random_unit_vector(m.dim_in, rng);
        std::vector<cplx> y = random_unit_vector(m.dim_out, rng);
        double val = positivity_value(m, x, y);
        for (std::size_t it = 0; it < budget.iters; ++it) {
            // Optimal y for fixed x.
            ComplexMatrix a = apply_map(m, ComplexMatrix::outer(x, x)).hermitize();
            EigenExtremes ea = eig_extremes(a);
            y = ea.min_vector;
            // Optimal x for fixed y: smallest eigenvector of M[j][i] = y* m(E_ij) y.
            ComplexMatrix g(m.dim_in, m.dim_in);
            for (std::size_t i = 0; i < m.dim_in; ++i)
                for (std::size_t j = 0; j < m.dim_in; ++j) {
                    cplx acc = 0.0;
                    for (std::size_t k = 0; k < m.dim_out; ++k)
                        for (std::size_t l = 0; l < m.dim_out; ++l)
                            acc += std::conj(y[k]) * m.choi(i * m.dim_out + k, j * m.dim_out + l) *
                                   y[l];
                    g(j, i) = acc;
                }
            EigenExtremes eg = eig_extremes(g.hermitize());
            x = eg.min_vector;
            const double nv = positivity_value(m, x, y);
            if (val - nv <= 1e-14 * std::max(1.0, std::abs(val))) {
                val = std::min(val, nv);
                break;
            }
            val = nv;
        }
        if (val < best.min_value) {
            best.min_value = val;
            best.x = x;
            best.y = y;
        }
    }
    if (best.min_value < -1e-8) {
        // Re-check the witness from scratch before reporting a violation.
        const double recheck = positivity_value(m, best.x, best.y);
        if (recheck < -1e-8) {
            best.status = PositiveStatus::verified_violation;
            best.min_value = recheck;
        }
    }
    return best;
}

namespace {

// Dykstra feasibility step onto {X >= 0} intersect {X^Gamma >= 0}.
ComplexMatrix project_ppt_cone(ComplexMatrix x, const FactorSplit& split, std::size_t iters) {
    ComplexMatrix p = ComplexMatrix::zero(x.rows(), x.cols());
    ComplexMatrix q = p;
    for (std::size_t it = 0; it < iters; ++it) {
        ComplexMatrix y = psd_project((x + p).hermitize());
        p = x + p - y;
        ComplexMatrix z =
            partial_transpose(psd_project(partial_transpose(y + q, split, Factor::B).hermitize()),
                              split, Factor::B);
        q = y + q - z;
        const double move = (z - x).frobenius();
        x = z;
        if (move <= 1e-12 * std::max(1.0, x.frobenius()) && it > 2) break;
    }
    return x;
}

} // namespace

DecomposabilityVerdict is_decomposable(const LinearMap& m, const DecompBudget& budget,
                                       std::uint64_t seed) {
    const ComplexMatrix& c = m.choi;
    if (c.hermiticity_defect() > 1e-10 * std::max(1.0, c.frobenius()))
        throw not_hermitian_preserving("is_decomposable: Choi matrix is not Hermitian");
    const FactorSplit split = m.choi_split();
    const double scale = std::max(1.0, c.frobenius());

    DecomposabilityVerdict v;

    // Pure CP / pure co-CP splits are exact; handle them before iterating.
    {
        CPClassification cls = classify_cp(m);
        if (cls.cp) {
            v.status = DecomposableStatus::feasible;
            v.cp_part = c.hermitize();
            v.cocp_part = ComplexMatrix::zero(c.rows(), c.cols());
            v.residual = 0.0;
            return v;
        }
        if (cls.co_cp) {
            v.status = DecomposableStatus::feasible;
            v.cp_part = ComplexMatrix::zero(c.rows(), c.cols());
            v.cocp_part = partial_transpose(c, split, Factor::B).hermitize();
            v.residual = 0.0;
            return v;
        }
    }

    // Feasibility: alternating projection for Choi = P + Q^Gamma, P,Q >= 0.
    ComplexMatrix p = psd_project((cplx(0.5) * c).hermitize());
    ComplexMatrix q = psd_project(partial_transpose(cplx(0.5) * c, split, Factor::B).hermitize());
    for (std::size_t it = 0; it < budget.feas_iters; ++it) {
        ComplexMatrix r = c - p - partial_transpose(q, split, Factor::B);
        v.residual = r.frobenius();
        if (v.residual <= 1e-7) {
            v.status = DecomposableStatus::feasible;
            v.cp_part = p;
            v.cocp_part = q;
            return v;
        }
        p = psd_project((p + cplx(0.5) * r).hermitize());
        q = psd_project((q + cplx(0.5) * partial_transpose(r, split, Factor::B)).hermitize());
    }

    // Dual search: minimize Tr(Choi * X) over the trace-one PPT slice by
    // projected subgradient with Dykstra feasibility steps.
    const std::size_t n = c.rows();
    ComplexMatrix x = ComplexMatrix::identity(n);
    x *= cplx(1.0 / static_cast<double>(n));
    const double eta0 = 0.5 / scale;
    double best_val = 1e300;
    ComplexMatrix best_x;
    (void)seed;
    for (std::size_t t = 0; t < budget.dual_steps; ++t) {
        ComplexMatrix step = x - (cplx(eta0 / std::sqrt(static_cast<double>(t) + 1.0)) * c);
        ComplexMatrix proj = project_ppt_cone(step, split, budget.dual_proj_iters);
        const double tr = proj.trace().real();
        if (tr <= 1e-12) {
            x = ComplexMatrix::identity(n);
            x *= cplx(1.0 / static_cast<double>(n));
            continue;
        }
        proj *= cplx(1.0 / tr);
        x = proj;
        const double val = mul(x, c).trace().real();
        if (val < best_val) {
            best_val = val;
            best_x = x;
        }
    }
    if (best_val < -1e-6) {
        // The certificate must be self-verifying: re-run the PPT feasibility
        // checks on the witness before claiming anything.
        EigenExtremes e1 = eig_extremes(best_x.hermitize());
        EigenExtremes e2 =
            eig_extremes(partial_transpose(best_x, split, Factor::B).hermitize());
        if (e1.min_value >= -1e-8 && e2.min_value >= -1e-8) {
            v.status = DecomposableStatus::certificate;
            v.witness = best_x;
            v.value = best_val;
            v.witness_min_eig = e1.min_value;
            v.witness_min_eig_pt = e2.min_value;
            return v;
        }
    }
    v.status = DecomposableStatus::inconclusive;
    return v;
}

cplx pair_map_functional(const LinearMap& m, const TensorElement& element,
                         PairingConvention convention) {
    cplx acc = 0.0;
    for (const auto& [a, b] : element) {
        if (a.rows() != m.dim_in || !a.square())
            throw dimension_mismatch("pair_map_functional: a side mismatch");
        if (b.rows() != m.dim_out || !b.square())
            throw dimension_mismatch("pair_map_functional: b side mismatch");
        ComplexMatrix ma = apply_map(m, a);
        acc += (convention == PairingConvention::projective) ? mul(ma, b.transpose()).trace()
                                                             : mul(ma, b).trace();
    }
    return acc;
}

std::vector<ComplexMatrix> kraus_factors(const LinearMap& m) {
    HermitianEigen e = eig_hermitian(m.choi.hermitize());
    const double lmax = e.values.back();
    if (e.values.front() < -psd_tol_for(std::max(std::abs(e.values.front()), std::abs(lmax))))
        throw not_cp("kraus_factors: Choi matrix is not PSD");
    const double cutoff = 1e-12 * std::max(lmax, 0.0);
    std::vector<ComplexMatrix> out;
    for (std::size_t k = e.values.size(); k-- > 0;) {
        const double lam = e.values[k];
        if (lam <= cutoff) break; // values ascend, remaining are below cutoff
        std::vector<cplx> u = e.vectors.col(k);
        ComplexMatrix v(m.dim_out, m.dim_in);
        const double w = std::sqrt(lam);
        for (std::size_t cidx = 0; cidx < m.dim_in; ++cidx)
            for (std::size_t r = 0; r < m.dim_out; ++r)
                v(r, cidx) = w * u[cidx * m.dim_out + r];
        out.push_back(std::move(v));
    }
    return out;
}

CriterionReport cp_criterion_check(const LinearMap& m, std::size_t n, std::size_t trials,
                                   std::uint64_t seed) {
    if (n == 0) throw bad_parameter("cp_criterion_check: n must be >= 1");
    Rng master(seed);
    CriterionReport rep;
    rep.min_value = 1e300;

    auto evaluate = [&](const std::vector<ComplexMatrix>& xs, const std::vector<ComplexMatrix>& ys,
                        const std::vector<cplx>& w) {
        ComplexMatrix g(m.dim_out, m.dim_out);
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = 0; j < xs.size(); ++j) {
                ComplexMatrix ph = apply_map(m, mul(xs[i].adjoint(), xs[j]));
                g += mul(mul(ys[i].adjoint(), ph), ys[j]);
            }
        return inner(w, g.apply(w)).real();
    };

    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = master.split(t);
        std::vector<ComplexMatrix> xs, ys;
        for (std::size_t i = 0; i < n; ++i) {
            ComplexMatrix x = ginibre(m.dim_in, m.dim_in, rng);
            x *= cplx(1.0 / std::max(x.frobenius(), 1e-300));
            xs.push_back(x);
            ComplexMatrix y = ginibre(m.dim_out, m.dim_out, rng);
            y *= cplx(1.0 / std::max(y.frobenius(), 1e-300));
            ys.push_back(y);
        }
        std::vector<cplx> w = random_unit_vector(m.dim_out, rng);
        rep.min_value = std::min(rep.min_value, evaluate(xs, ys, w));
        ++rep.trials;
    }

    // Constructed candidate: when the Choi matrix has a negative eigenvector
    // u = sum_i e_i (x) u_i, the tuple x_i = |e_1><e_i|, y_i = [u_i | 0...],
    // w = e_1 reproduces <u|Choi|u> as the criterion value.
    if (n >= m.dim_in) {
        EigenExtremes ex = eig_extremes(m.choi.hermitize());
        if (ex.min_value < 0.0) {
            std::vector<ComplexMatrix> xs, ys;
            for (std::size_t i = 0; i < m.dim_in; ++i) {
                xs.push_back(ComplexMatrix::unit(m.dim_in, 0, i));
                ComplexMatrix y(m.dim_out, m.dim_out);
                for (std::size_t r = 0; r < m.dim_out; ++r)
                    y(r, 0) = ex.min_vector[i * m.dim_out + r];
                ys.push_back(y);
            }
            std::vector<cplx> w(m.dim_out, cplx(0.0));
            w[0] = 1.0;
            rep.min_value = std::min(rep.min_value, evaluate(xs, ys, w));
            ++rep.trials;
        }
    }
    rep.violation_found = rep.min_value < -1e-9;
    return rep;
}

double projective_norm_ub(const TensorElement& decomposition) {
    double acc = 0.0;
    for (const auto& [a, b] : decomposition) acc += norms(a).op * norms(b).trace;
    return acc;
}

MapClassification classify_map(const LinearMap& m, const SearchBudget& pos_budget,
                               const DecompBudget& dec_budget, std::uint64_t seed) {
    MapClassification c;
    c.cp = classify_cp(m);
    c.positive = is_positive_map(m, pos_budget, seed);
    c.decomposable = is_decomposable(m, dec_budget, seed);
    return c;
}

} // namespace pptlab
