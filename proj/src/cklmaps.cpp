#include "pptlab/cklmaps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>

#include "pptlab/eigen.hpp"
#include "pptlab/parallel.hpp"
#include "pptlab/rng.hpp"
#include "pptlab/states.hpp"

namespace pptlab {

namespace {

// Circulant coefficient matrix [a_kl]; f_k(l) = coef[k][l].
void coef_matrix(const CKLParams& p, double coef[3][3]) {
    coef[0][0] = p.a; coef[0][1] = p.b; coef[0][2] = p.c;
    coef[1][0] = p.c; coef[1][1] = p.a; coef[1][2] = p.b;
    coef[2][0] = p.b; coef[2][1] = p.c; coef[2][2] = p.a;
}

void check_params(const CKLParams& p) {
    if (!(p.a >= 0.0) || !(p.b >= 0.0) || !(p.c >= 0.0) || !std::isfinite(p.a) ||
        !std::isfinite(p.b) || !std::isfinite(p.c))
        throw bad_parameter("ckl: parameters must be finite and nonnegative");
}

} // namespace

LinearMap ckl_psi_map(const CKLParams& p) {
    check_params(p);
    double coef[3][3];
    coef_matrix(p, coef);
    return map_from_action(3, 3, [&](const ComplexMatrix& x) {
        ComplexMatrix out(3, 3);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i) out(k, k) += coef[k][i] * x(i, i);
        return out;
    });
}

LinearMap ckl_map(const CKLParams& p) {
    check_params(p);
    double coef[3][3];
    coef_matrix(p, coef);
    return map_from_action(3, 3, [&](const ComplexMatrix& x) {
        ComplexMatrix out = cplx(-1.0) * x;
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i) out(k, k) += coef[k][i] * x(i, i);
        return out;
    });
}

CKLClassification ckl_classify_analytic(const CKLParams& p) {
    check_params(p);
    CKLClassification c;
    c.params = p;
    c.positive = p.a >= 1.0 && p.a + p.b + p.c >= 3.0 &&
                 (p.a >= 2.0 || p.b * p.c >= (2.0 - p.a) * (2.0 - p.a));
    c.cp = p.a >= 3.0;
    c.decomposable =
        p.a >= 1.0 && (p.a >= 3.0 || p.b * p.c >= (3.0 - p.a) * (3.0 - p.a) / 4.0);

    const double bc = p.b * p.c;
    double d = std::abs(p.a - 1.0);
    d = std::min(d, std::abs(p.a - 2.0));
    d = std::min(d, std::abs(p.a - 3.0));
    d = std::min(d, std::abs(p.a + p.b + p.c - 3.0));
    d = std::min(d, std::abs(bc - (2.0 - p.a) * (2.0 - p.a)));
    d = std::min(d, std::abs(bc - (3.0 - p.a) * (3.0 - p.a) / 4.0));
    c.boundary_distance = d;
    c.near_boundary = d <= 1e-3;
    return c;
}

CKLClassification ckl_classify(const CKLParams& p, const SearchBudget& pos_budget,
                               const DecompBudget& dec_budget, std::uint64_t seed) {
    CKLClassification c = ckl_classify_analytic(p);
    LinearMap m = ckl_map(p);
    c.has_numeric = true;
    c.numeric_cp = classify_cp(m);
    c.numeric_positive = is_positive_map(m, pos_budget, seed);
    c.numeric_decomposable = is_decomposable(m, dec_budget, seed);
    if (!c.near_boundary) {
        c.cp_agrees = (c.cp == c.numeric_cp.cp);
        // A violation refutes positivity; absence of one is only agreement
        // evidence for the positive region.
        const bool found = c.numeric_positive.status == PositiveStatus::verified_violation;
        c.positive_agrees = c.positive ? !found : found;
        if (c.decomposable)
            c.decomposable_agrees =
                c.numeric_decomposable.status == DecomposableStatus::feasible;
        else
            c.decomposable_agrees =
                c.numeric_decomposable.status == DecomposableStatus::certificate;
    }
    return c;
}

CKLFunctional ckl_functional(const CKLParams& p) {
    CKLFunctional f;
    f.params = p;
    f.positive_region = ckl_classify_analytic(p).positive;
    f.map = ckl_map(p);
    return f;
}

cplx CKLFunctional::eval(const ComplexMatrix& x, const ComplexMatrix& y) const {
    if (!x.square() || x.rows() != 3 || !y.square() || y.rows() != 3)
        throw dimension_mismatch("ckl eval: factors must be 3x3");
    double coef[3][3];
    coef_matrix(params, coef);
    // Tr(phi(E_ij) y^t) = -y(i,j) for i != j and
    // -y(i,i) + sum_k coef[k][i] y(k,k) on the diagonal.
    cplx acc = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            cplx w = -y(i, j);
            if (i == j)
                for (int k = 0; k < 3; ++k) w += coef[k][i] * y(k, k);
            acc += x(i, j) * w;
        }
    return acc;
}

cplx CKLFunctional::eval(const TensorElement& element) const {
    cplx acc = 0.0;
    for (const auto& [x, y] : element) acc += eval(x, y);
    return acc;
}

double CKLFunctional::extension_value(const ComplexMatrix& w) const {
    if (!w.square() || w.rows() != 9)
        throw dimension_mismatch("ckl extension: W must be 9x9");
    // omega~(W) = sum_e W_e * Choi_e; real for Hermitian W.
    cplx acc = 0.0;
    for (std::size_t u = 0; u < 9; ++u)
        for (std::size_t v = 0; v < 9; ++v) acc += w(u, v) * map.choi(u, v);
    return acc.real();
}

WitnessSearchResult ckl_witness_search(const CKLFunctional& f, std::size_t samples,
                                       std::uint64_t seed) {
    Rng master(seed);
    WitnessSearchResult res;
    res.samples = samples;
    res.projective_min_sampled = 1e300;
    for (std::size_t t = 0; t < samples; ++t) {
        Rng rng = master.split(t);
        ComplexMatrix x = random_psd(3, 1 + rng.uniform_index(3), rng);
        ComplexMatrix y = random_psd(3, 1 + rng.uniform_index(3), rng);
        x *= cplx(1.0 / std::max(x.frobenius(), 1e-300));
        y *= cplx(1.0 / std::max(y.frobenius(), 1e-300));
        res.projective_min_sampled = std::min(res.projective_min_sampled, f.eval(x, y).real());
    }

    // Injective-cone witness: start from the maximally entangled projector
    // and run a few projected-gradient steps, keeping the best PSD state.
    std::vector<cplx> phi = max_entangled_vector(3);
    ComplexMatrix w = ComplexMatrix::outer(phi, phi);
    ComplexMatrix grad = f.map.choi.transpose(); // descent direction for sum W_e C_e
    double best = f.extension_value(w);
    ComplexMatrix best_w = w;
    double eta = 0.25;
    for (int it = 0; it < 60; ++it) {
        ComplexMatrix step = psd_project((w - cplx(eta) * grad).hermitize());
        const double tr = step.trace().real();
        if (tr <= 1e-12) break;
        step *= cplx(1.0 / tr);
        const double val = f.extension_value(step);
        if (val < best) {
            best = val;
            best_w = step;
        }
        w = step;
    }
    res.injective_witness = best_w;
    res.injective_value = best;
    res.witness_found = best < 0.0;
    if (res.witness_found) {
        PPTVerdict v = is_ppt(BipartiteState{FactorSplit{3, 3}, best_w});
        res.witness_is_ppt = v.is_ppt;
    }
    return res;
}

CKLGridReport ckl_grid_validate(std::size_t n, std::size_t positivity_samples,
                                std::size_t feasibility_samples, std::uint64_t seed) {
    CKLGridReport rep;
    const std::size_t total = n * n * n;
    rep.points = total;

    auto param_at = [&](std::size_t idx) {
        const std::size_t ia = idx / (n * n), ib = (idx / n) % n, ic = idx % n;
        CKLParams p;
        p.a = (static_cast<double>(ia) + 0.5) * 4.0 / static_cast<double>(n);
        p.b = (static_cast<double>(ib) + 0.5) * 3.0 / static_cast<double>(n);
        p.c = (static_cast<double>(ic) + 0.5) * 3.0 / static_cast<double>(n);
        return p;
    };

    // Full-grid CP comparison.
    std::vector<int> cp_flags(total, -1); // -1 skipped, 0 disagree, 1 agree
    parallel_for(total, [&](std::size_t idx) {
        CKLClassification c = ckl_classify_analytic(param_at(idx));
        if (c.near_boundary) return;
        CPClassification num = classify_cp(ckl_map(c.params));
        cp_flags[idx] = (num.cp == c.cp) ? 1 : 0;
    });
    for (int fl : cp_flags) {
        if (fl < 0) continue;
        ++rep.cp_checked;
        if (fl == 0) ++rep.cp_disagreements;
    }

    // Seeded subsamples for the budgeted searches.
    Rng rng(seed);
    std::mutex mtx;

    std::vector<std::size_t> pos_idx, dec_idx;
    while (pos_idx.size() < positivity_samples && positivity_samples > 0) {
        const std::size_t idx = rng.uniform_index(total);
        if (!ckl_classify_analytic(param_at(idx)).near_boundary) pos_idx.push_back(idx);
    }
    while (dec_idx.size() < feasibility_samples && feasibility_samples > 0) {
        const std::size_t idx = rng.uniform_index(total);
        CKLClassification c = ckl_classify_analytic(param_at(idx));
        if (!c.near_boundary && c.decomposable) dec_idx.push_back(idx);
    }

    parallel_for(pos_idx.size(), [&](std::size_t k) {
        CKLParams p = param_at(pos_idx[k]);
        CKLClassification c = ckl_classify_analytic(p);
        PositivityVerdict v = is_positive_map(ckl_map(p), SearchBudget{16, 60}, seed + k);
        const bool found = v.status == PositiveStatus::verified_violation;
        std::lock_guard<std::mutex> lk(mtx);
        ++rep.positive_checked;
        if (c.positive == found) {
            ++rep.positive_disagreements;
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "positivity mismatch at a=%.3f b=%.3f c=%.3f (analytic %d, min %.3e)",
                          p.a, p.b, p.c, static_cast<int>(c.positive), v.min_value);
            rep.exceptions.emplace_back(buf);
        }
    });

    parallel_for(dec_idx.size(), [&](std::size_t k) {
        CKLParams p = param_at(dec_idx[k]);
        DecomposabilityVerdict v = is_decomposable(ckl_map(p), DecompBudget{}, seed + k);
        std::lock_guard<std::mutex> lk(mtx);
        ++rep.decomposable_checked;
        if (v.status == DecomposableStatus::feasible) {
            rep.max_feasibility_residual = std::max(rep.max_feasibility_residual, v.residual);
        } else {
            ++rep.decomposable_failures;
            char buf[120];
            std::snprintf(buf, sizeof(buf), "feasibility failed at a=%.3f b=%.3f c=%.3f", p.a,
                          p.b, p.c);
            rep.exceptions.emplace_back(buf);
        }
    });
    return rep;
}

} // namespace pptlab
