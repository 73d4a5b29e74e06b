#include "pptlab/batch.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <json.hpp>

#include "pptlab/cklmaps.hpp"
#include "pptlab/eigen.hpp"
#include "pptlab/entangling.hpp"
#include "pptlab/json_io.hpp"
#include "pptlab/mapspace.hpp"
#include "pptlab/measures.hpp"
#include "pptlab/parallel.hpp"
#include "pptlab/rng.hpp"
#include "pptlab/states.hpp"
#include "pptlab/stormer.hpp"
#include "pptlab/tomita.hpp"

namespace pptlab {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

CheckRecord make_check(const std::string& name, bool pass,
                       std::vector<std::pair<std::string, double>> metrics) {
    return CheckRecord{name, pass ? "pass" : "fail", std::move(metrics)};
}

CheckRecord make_evidence(const std::string& name,
                          std::vector<std::pair<std::string, double>> metrics) {
    return CheckRecord{name, "inconclusive", std::move(metrics)};
}

// Random diagonal faithful density for ConeContext references.
ComplexMatrix random_diag_density(std::size_t d, Rng& rng) {
    std::vector<double> w(d);
    double s = 0.0;
    for (auto& x : w) {
        x = 0.1 + rng.uniform();
        s += x;
    }
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = w[i] / s;
    return m;
}

const std::vector<FactorSplit> kDimPairs = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};

SuiteResult run_theorem2_2(std::size_t count, std::uint64_t seed) {
    SuiteResult res{"theorem2_2", seed, false, {}, 0, 0, 0};
    if (count == 0) count = 50;
    for (const auto& split : kDimPairs) {
        std::vector<double> residuals(count, 0.0);
        parallel_for(count, [&](std::size_t i) {
            Rng inst = Rng(seed).split(split.dA * 131 + split.dB * 17).split(i);
            const std::size_t dim = split.dim();
            const std::size_t rank = 1 + inst.uniform_index(dim);
            ComplexMatrix rho = random_psd(dim, rank, inst, true);
            BipartiteState s{split, rho};
            residuals[i] = verify_representation(s, 20, inst.next_u64()).max_residual;
        });
        const double worst = *std::max_element(residuals.begin(), residuals.end());
        res.checks.push_back(make_check(
            "representation_" + std::to_string(split.dA) + "x" + std::to_string(split.dB),
            worst <= 1e-9,
            {{"max_residual", worst}, {"states", static_cast<double>(count)}}));
    }
    return res;
}

SuiteResult run_prop2_5(std::size_t count, std::uint64_t seed) {
    SuiteResult res{"prop2_5", seed, false, {}, 0, 0, 0};
    if (count == 0) count = 50;
    for (const auto& split : kDimPairs) {
        std::vector<double> pairing(count, 0.0), choidist(count, 0.0);
        parallel_for(count, [&](std::size_t i) {
            Rng inst = Rng(seed).split(split.dA * 131 + split.dB * 17).split(i);
            const std::size_t dim = split.dim();
            ComplexMatrix rho = random_psd(dim, 1 + inst.uniform_index(dim), inst, true);
            BipartiteState s{split, rho};
            EntanglingOperator h = build_entangling_operator(s);
            auto [fwd, star] = entanglement_maps_from(h);
            double worst = 0.0;
            for (int t = 0; t < 10; ++t) {
                ComplexMatrix a = ginibre(split.dA, split.dA, inst);
                ComplexMatrix b = ginibre(split.dB, split.dB, inst);
                a *= cplx(1.0 / std::max(a.frobenius(), 1e-300));
                b *= cplx(1.0 / std::max(b.frobenius(), 1e-300));
                const cplx omega = mul(rho, tensor_product(a, b)).trace();
                const cplx via_star = mul(b, apply_entanglement_map(star, a)).trace();
                const cplx via_fwd = mul(a, apply_entanglement_map(fwd, b)).trace();
                worst = std::max(worst, std::abs(omega - via_star));
                worst = std::max(worst, std::abs(omega - via_fwd));
            }
            pairing[i] = worst;
            LinearMap closed = map_from_action(split.dA, split.dB, [&](const ComplexMatrix& a) {
                return phi_star_closed_form(s, a);
            });
            choidist[i] = (star.choi - closed.choi).frobenius();
        });
        const double w1 = *std::max_element(pairing.begin(), pairing.end());
        const double w2 = *std::max_element(choidist.begin(), choidist.end());
        const std::string tag = std::to_string(split.dA) + "x" + std::to_string(split.dB);
        res.checks.push_back(make_check("pairing_" + tag, w1 <= 1e-9,
                                        {{"max_residual", w1}}));
        res.checks.push_back(make_check("choi_closed_form_" + tag, w2 <= 1e-9,
                                        {{"max_frobenius", w2}}));
    }
    return res;
}

SuiteResult run_prop4_2(std::size_t count, std::uint64_t seed) {
    SuiteResult res{"prop4_2", seed, false, {}, 0, 0, 0};
    if (count == 0) count = 25;
    for (std::size_t d = 2; d <= 5; ++d) {
        std::vector<double> r1(count, 0.0), r2(count, 0.0);
        parallel_for(count, [&](std::size_t i) {
            Rng inst = Rng(seed).split(d).split(i);
            StandardForm sf = standard_form(random_faithful_density(d, inst.next_u64()));
            TranspositionReport rep = verify_transposition_structure(sf, 20, inst.next_u64());
            r1[i] = rep.max_residual_adjoint_form;
            r2[i] = rep.max_residual_polar_form;
        });
        const double w1 = *std::max_element(r1.begin(), r1.end());
        const double w2 = *std::max_element(r2.begin(), r2.end());
        res.checks.push_back(make_check("polar_decomposition_dim" + std::to_string(d),
                                        w1 <= 1e-10 && w2 <= 1e-10,
                                        {{"max_residual_adjoint", w1},
                                         {"max_residual_polar", w2},
                                         {"instances", static_cast<double>(count)}}));
    }
    return res;
}

SuiteResult run_prop4_3(std::size_t count, std::uint64_t seed) {
    SuiteResult res{"prop4_3", seed, false, {}, 0, 0, 0};
    if (count == 0) count = 25;
    for (std::size_t d = 2; d <= 5; ++d) {
        std::vector<double> r1(count, 0.0), r2(count, 0.0);
        parallel_for(count, [&](std::size_t i) {
            Rng inst = Rng(seed).split(d * 7).split(i);
            StandardForm sf = standard_form(random_faithful_density(d, inst.next_u64()));
            ComplexMatrix sigma = random_psd(d, 1 + inst.uniform_index(d), inst, true);
            ComplexMatrix xi = sqrt_psd(sigma);
            ComplexMatrix uxi = transpose_cone_vector(xi, sf);
            double w1 = 0.0, w2 = 0.0;
            for (int t = 0; t < 20; ++t) {
                ComplexMatrix a = ginibre(d, d, inst);
                a *= cplx(1.0 / std::max(a.frobenius(), 1e-300));
                // omega_xi(a) = Tr(xi^* a xi) = Tr(sigma a)
                const cplx wxi = mul(mul(xi.adjoint(), a), xi).trace();
                w1 = std::max(w1, std::abs(wxi - mul(sigma, a).trace()));
                // omega_{U xi}(a) = omega_xi(a^t)
                const cplx lhs = mul(mul(uxi.adjoint(), a), uxi).trace();
                const cplx rhs = mul(mul(xi.adjoint(), eigenbasis_transpose(sf, a)), xi).trace();
                w2 = std::max(w2, std::abs(lhs - rhs));
            }
            r1[i] = w1;
            r2[i] = w2;
        });
        const double w1 = *std::max_element(r1.begin(), r1.end());
        const double w2 = *std::max_element(r2.begin(), r2.end());
        res.checks.push_back(make_check("cone_representative_dim" + std::to_string(d),
                                        w1 <= 1e-10 && w2 <= 1e-10,
                                        {{"max_state_residual", w1},
                                         {"max_transpose_residual", w2}}));
    }
    return res;
}

SuiteResult run_theorem5_1(std::size_t count, std::uint64_t seed) {
    SuiteResult res{"theorem5_1", seed, false, {}, 0, 0, 0};
    if (count == 0) count = 300;
    const std::vector<FactorSplit> splits = {{2, 2}, {2, 3}, {3, 3}};
    for (const auto& split : splits) {
        std::vector<int> mismatch(count, 0), sep_fail(count, 0);
        parallel_for(count, [&](std::size_t i) {
            Rng inst = Rng(seed).split(split.dA * 131 + split.dB).split(i);
            ConeContext ctx = cone_context(split, random_diag_density(split.dA, inst),
                                           random_diag_density(split.dB, inst));
            const std::size_t n = split.dim();
            // Mixed diet: arbitrary Hermitian, PSD, and sandwiched PSD.
            ComplexMatrix x;
            switch (inst.uniform_index(3)) {
                case 0: x = random_hermitian(n, inst); break;
                case 1: x = random_psd(n, 1 + inst.uniform_index(n), inst); break;
                default:
                    x = mul(mul(ctx.rho_q, random_psd(n, n, inst)), ctx.rho_q).hermitize();
            }
            ConeMembership m = cone_membership(ConeVector{split, x}, ctx);
            const bool a_pn = m.min_eig_a >= -psd_tol_for(std::abs(m.min_eig_a) + 1.0);
            const bool a_tau = m.min_eig_a_pt >= -psd_tol_for(std::abs(m.min_eig_a_pt) + 1.0);
            if (a_pn != m.in_pn || a_tau != m.in_pn_tau) mismatch[i] = 1;

            // Corollary direction: sums of PSD product terms land in both cones.
            ComplexMatrix s(n, n);
            const std::size_t terms = 1 + inst.uniform_index(3);
            for (std::size_t t = 0; t < terms; ++t)
                s += tensor_product(random_psd(split.dA, split.dA, inst),
                                    random_psd(split.dB, split.dB, inst));
            ConeMembership ms = cone_membership(ConeVector{split, s}, ctx);
            if (!ms.in_intersection) sep_fail[i] = 1;
        });
        int bad = 0, sbad = 0;
        for (std::size_t i = 0; i < count; ++i) {
            bad += mismatch[i];
            sbad += sep_fail[i];
        }
        const std::string tag = std::to_string(split.dA) + "x" + std::to_string(split.dB);
        res.checks.push_back(make_check("two_form_equivalence_" + tag, bad == 0,
                                        {{"mismatches", static_cast<double>(bad)},
                                         {"instances", static_cast<double>(count)}}));
        res.checks.push_back(make_check("product_psd_in_intersection_" + tag, sbad == 0,
                                        {{"failures", static_cast<double>(sbad)}}));
    }
    return res;
}

SuiteResult run_section6_compare(std::size_t count, std::uint64_t seed) {
    SuiteResult res{"section6_compare", seed, true, {}, 0, 0, 0};
    if (count == 0) count = 40;
    const FactorSplit split{2, 2};
    ConeContext ctx = uniform_cone_context(split);

    struct Row {
        int kind;
        bool ppt, cpcocp, sqrt_in, sandwich_in;
        double equ;
        bool guaranteed_ok;
    };
    std::vector<Row> rows(count);
    parallel_for(count, [&](std::size_t i) {
        Rng inst = Rng(seed).split(i);
        const int kind = static_cast<int>(i % 4);
        BipartiteState s{split, ComplexMatrix()};
        switch (kind) {
            case 0: { // product
                s.rho = tensor_product(random_psd(2, 2, inst, true),
                                       random_psd(2, 2, inst, true));
                break;
            }
            case 1: // separable mixture
                s = random_separable(split, 3, inst.next_u64()).state;
                break;
            case 2: // isotropic across the boundary
                s = isotropic(2, 0.05 + 0.9 * inst.uniform());
                break;
            default: // Haar pure (generically entangled)
                s = random_pure_bipartite(split, SchmidtSpec{true, {}}, inst.next_u64());
        }
        ComparisonRecord rec = compare_characterizations(s, ctx, 10, inst.next_u64());
        Row r;
        r.kind = kind;
        r.ppt = rec.density_ppt.is_ppt;
        r.cpcocp = rec.phi_star_cp && rec.phi_star_co_cp;
        r.sqrt_in = rec.sqrt_membership.in_intersection;
        r.sandwich_in = rec.sandwich_membership.in_intersection;
        r.equ = rec.eq_u_residual;
        // Guaranteed parts: (a) <=> (b); co-CP always; Eq (U) on products.
        r.guaranteed_ok = (r.ppt == r.cpcocp) && rec.phi_star_co_cp &&
                          (kind != 0 || rec.eq_u_residual <= 1e-10);
        rows[i] = r;
    });

    int guaranteed_bad = 0, sqrt_vs_ppt_diff = 0, sandwich_vs_ppt_diff = 0;
    double max_equ_product = 0.0, max_equ_other = 0.0;
    for (const auto& r : rows) {
        if (!r.guaranteed_ok) ++guaranteed_bad;
        if (r.ppt != r.sqrt_in) ++sqrt_vs_ppt_diff;
        if (r.ppt != r.sandwich_in) ++sandwich_vs_ppt_diff;
        if (r.kind == 0)
            max_equ_product = std::max(max_equ_product, r.equ);
        else
            max_equ_other = std::max(max_equ_other, r.equ);
    }
    res.checks.push_back(make_check("guaranteed_subinvariants", guaranteed_bad == 0,
                                    {{"violations", static_cast<double>(guaranteed_bad)},
                                     {"instances", static_cast<double>(count)}}));
    res.checks.push_back(
        make_evidence("cone_vs_ppt_correspondence",
                      {{"sqrt_disagreements", static_cast<double>(sqrt_vs_ppt_diff)},
                       {"sandwich_disagreements", static_cast<double>(sandwich_vs_ppt_diff)},
                       {"max_eq_u_residual_product", max_equ_product},
                       {"max_eq_u_residual_nonproduct", max_equ_other}}));
    return res;
}

SuiteResult run_stormer(std::size_t count, std::uint64_t seed) {
    SuiteResult res{"stormer", seed, false, {}, 0, 0, 0};
    if (count == 0) count = 100;

    std::vector<double> rec_res(count, 0.0);
    std::vector<int> cond_fail(count, 0);
    parallel_for(count, [&](std::size_t i) {
        Rng inst = Rng(seed).split(i);
        const std::size_t d = 2 + inst.uniform_index(3);
        ComplexMatrix a1 = ginibre(d, d, inst) + cplx(2.0) * ComplexMatrix::identity(d);
        ComplexMatrix n = random_normal_matrix(d, inst);
        StormerPair p{a1, mul(n, a1)};
        if (!stormer_condition(p).holds()) {
            cond_fail[i] = 1;
            return;
        }
        StormerDecomposition dec = canonical_decomposition(p);
        rec_res[i] = std::max({dec.residual_a2, dec.residual_block, dec.residual_separable});
    });
    int cf = 0;
    for (int v : cond_fail) cf += v;
    const double wr = *std::max_element(rec_res.begin(), rec_res.end());
    res.checks.push_back(make_check("constructed_pairs", cf == 0 && wr <= 1e-9,
                                    {{"condition_failures", static_cast<double>(cf)},
                                     {"max_reconstruction_residual", wr}}));

    std::vector<double> neg(count, 0.0);
    parallel_for(count, [&](std::size_t i) {
        Rng inst = Rng(seed).split(count + i);
        const std::size_t d = 2 + inst.uniform_index(3);
        ComplexMatrix a1 = ginibre(d, d, inst) + cplx(2.0) * ComplexMatrix::identity(d);
        // Deliberately non-normal N: normal plus an O(1) shear.
        ComplexMatrix n = random_normal_matrix(d, inst);
        ComplexMatrix shear(d, d);
        shear(0, d - 1) = 1.5;
        n += shear;
        StormerPair p{a1, mul(n, a1)};
        neg[i] = stormer_condition(p).min_eig_transposed;
    });
    const double worst_neg = *std::max_element(neg.begin(), neg.end());
    res.checks.push_back(make_check("non_normal_pairs_fail", worst_neg < -1e-8,
                                    {{"max_transposed_min_eig", worst_neg}}));

    std::vector<int> zhan_bad(count, 0);
    parallel_for(count, [&](std::size_t i) {
        Rng inst = Rng(seed).split(2 * count + i);
        const std::size_t d = 2 + inst.uniform_index(3);
        ComplexMatrix a = random_psd(d, d, inst);
        ComplexMatrix c = random_psd(d, d, inst);
        ComplexMatrix b;
        if (inst.uniform() < 0.5) {
            // Feasible construction: B = A^{1/2} W C^{1/2} with a contraction W.
            ComplexMatrix w = haar_unitary(d, inst);
            w *= cplx(inst.uniform());
            b = mul(mul(sqrt_psd(a), w), sqrt_psd(c));
        } else {
            b = ginibre(d, d, inst);
        }
        ZhanResult z = zhan_factor(a, b, c);
        const bool via_factor = z.is_contraction && z.factor_residual <= 1e-9;
        if (via_factor != z.block_psd) zhan_bad[i] = 1;
    });
    int zb = 0;
    for (int v : zhan_bad) zb += v;
    res.checks.push_back(make_check("zhan_equivalence", zb == 0,
                                    {{"disagreements", static_cast<double>(zb)},
                                     {"instances", static_cast<double>(count)}}));
    return res;
}

SuiteResult run_ckl_grid(std::size_t count, std::uint64_t seed) {
    SuiteResult res{"ckl_grid", seed, false, {}, 0, 0, 0};
    const std::size_t n = 20;
    const std::size_t pos_samples = count ? count : 48;
    const std::size_t feas_samples = count ? count : 64;
    CKLGridReport rep = ckl_grid_validate(n, pos_samples, feas_samples, seed);
    res.checks.push_back(make_check("cp_region", rep.cp_disagreements == 0,
                                    {{"checked", static_cast<double>(rep.cp_checked)},
                                     {"disagreements",
                                      static_cast<double>(rep.cp_disagreements)}}));
    res.checks.push_back(
        make_check("positivity_region", rep.positive_disagreements == 0,
                   {{"checked", static_cast<double>(rep.positive_checked)},
                    {"disagreements", static_cast<double>(rep.positive_disagreements)}}));
    res.checks.push_back(
        make_check("decomposable_region_feasibility",
                   rep.decomposable_failures == 0 && rep.max_feasibility_residual <= 1e-7,
                   {{"checked", static_cast<double>(rep.decomposable_checked)},
                    {"failures", static_cast<double>(rep.decomposable_failures)},
                    {"max_residual", rep.max_feasibility_residual}}));

    // Indecomposability certificates for phi[2,0,mu].
    for (double mu : {1.0, 1.5, 2.0}) {
        DecomposabilityVerdict v =
            is_decomposable(ckl_map(CKLParams{2.0, 0.0, mu}), DecompBudget{4000, 800, 150}, seed);
        const bool ok = v.status == DecomposableStatus::certificate && v.value < -1e-6;
        char name[48];
        std::snprintf(name, sizeof(name), "certificate_mu_%.1f", mu);
        res.checks.push_back(make_check(name, ok,
                                        {{"pairing", v.value},
                                         {"witness_min_eig", v.witness_min_eig},
                                         {"witness_min_eig_pt", v.witness_min_eig_pt}}));
    }

    // Functional checks at (2,0,1).
    CKLFunctional f = ckl_functional(CKLParams{2.0, 0.0, 1.0});
    WitnessSearchResult w = ckl_witness_search(f, 10000, seed + 5);
    res.checks.push_back(make_check("functional_projective_positive",
                                    w.projective_min_sampled >= -1e-10,
                                    {{"min_sampled", w.projective_min_sampled},
                                     {"samples", static_cast<double>(w.samples)}}));
    res.checks.push_back(make_check("functional_injective_witness",
                                    w.witness_found && w.injective_value < 0.0,
                                    {{"value", w.injective_value}}));
    return res;
}

SuiteResult run_measures(std::size_t count, std::uint64_t seed) {
    SuiteResult res{"measures", seed, false, {}, 0, 0, 0};
    if (count == 0) count = 30;
    const FactorSplit split{2, 2};

    // Regression: the maximally entangled 2x2 projection.
    std::vector<cplx> phi = max_entangled_vector(2);
    ConeVector xi{split, ComplexMatrix::outer(phi, phi)};
    DykstraResult base = dykstra_project(xi);
    res.checks.push_back(make_check("max_entangled_regression",
                                    std::abs(base.distance - 0.5) <= 1e-6,
                                    {{"distance", base.distance},
                                     {"iterations", static_cast<double>(base.iterations)}}));

    struct Row {
        double feas, idem, gap, lipschitz_excess;
    };
    std::vector<Row> rows(count);
    parallel_for(count, [&](std::size_t i) {
        Rng inst = Rng(seed).split(i);
        ComplexMatrix x = random_hermitian(4, inst);
        ConeVector v{split, x};
        DykstraResult r = dykstra_project(v);
        Row row;
        row.feas = std::min(r.feas_min_eig, r.feas_min_eig_pt);
        DykstraResult r2 = dykstra_project(r.projection);
        row.idem = (r2.projection.x - r.projection.x).frobenius();

        SeesawOptions so;
        so.restarts = 6;
        so.iters = 600;
        const double upper = d_e_upper(v, so, inst.next_u64()).value;
        row.gap = r.distance - upper; // must be <= ~0 (lower <= upper)

        ComplexMatrix y = random_hermitian(4, inst);
        const double dxy = (x - y).frobenius();
        const double dgx = r.distance;
        const double dgy = d_ge(ConeVector{split, y});
        row.lipschitz_excess = std::abs(dgx - dgy) - dxy;
        rows[i] = row;
    });
    double worst_feas = 0.0, worst_idem = 0.0, worst_gap = -1e300, worst_lip = -1e300;
    for (const auto& r : rows) {
        worst_feas = std::min(worst_feas, r.feas);
        worst_idem = std::max(worst_idem, r.idem);
        worst_gap = std::max(worst_gap, r.gap);
        worst_lip = std::max(worst_lip, r.lipschitz_excess);
    }
    res.checks.push_back(make_check("projection_feasibility", worst_feas >= -1e-8,
                                    {{"min_eig", worst_feas}}));
    res.checks.push_back(make_check("projection_fixed_point", worst_idem <= 1e-9,
                                    {{"max_drift", worst_idem}}));
    res.checks.push_back(make_check("sandwich_order", worst_gap <= 1e-8,
                                    {{"max_lower_minus_upper", worst_gap}}));
    res.checks.push_back(make_check("lipschitz", worst_lip <= 1e-9,
                                    {{"max_excess", worst_lip}}));

    // Local-unitary invariance of D_e through transported decompositions.
    double worst_lu = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        Rng inst = Rng(seed).split(1000 + i);
        BipartiteState s = random_pure_bipartite(split, SchmidtSpec{true, {}}, inst.next_u64());
        ConeVector v{split, sqrt_psd(s.rho)};
        SeesawOptions so;
        so.restarts = 8;
        so.iters = 1200;
        SeparableApprox ap = d_e_upper(v, so, inst.next_u64());

        ComplexMatrix ua = haar_unitary(2, inst), ub = haar_unitary(2, inst);
        ComplexMatrix big = tensor_product(ua, ub);
        ConeVector v2{split, mul(mul(big, v.x), big.adjoint())};
        SeparableApprox moved;
        moved.xs = ap.xs;
        moved.ys = ap.ys;
        for (auto& xv : moved.xs) xv = ua.apply(xv);
        for (auto& yv : moved.ys) yv = ub.apply(yv);
        SeparableApprox ap2 = d_e_upper(v2, so, inst.next_u64(), &moved);
        // Descent from the transported start can only improve, and transport
        // back bounds the original, so the two values must agree tightly.
        worst_lu = std::max(worst_lu, std::abs(ap2.value - ap.value));
    }
    res.checks.push_back(
        make_check("local_unitary_invariance", worst_lu <= 1e-9, {{"max_gap", worst_lu}}));
    return res;
}

SuiteResult dispatch(const SuiteSpec& spec) {
    if (spec.name == "theorem2_2") return run_theorem2_2(spec.count, spec.seed);
    if (spec.name == "prop2_5") return run_prop2_5(spec.count, spec.seed);
    if (spec.name == "prop4_2") return run_prop4_2(spec.count, spec.seed);
    if (spec.name == "prop4_3") return run_prop4_3(spec.count, spec.seed);
    if (spec.name == "theorem5_1") return run_theorem5_1(spec.count, spec.seed);
    if (spec.name == "section6_compare") return run_section6_compare(spec.count, spec.seed);
    if (spec.name == "stormer") return run_stormer(spec.count, spec.seed);
    if (spec.name == "ckl_grid") return run_ckl_grid(spec.count, spec.seed);
    if (spec.name == "measures") return run_measures(spec.count, spec.seed);
    throw bad_config("unknown suite: " + spec.name);
}

} // namespace

bool RunReport::ok() const {
    for (const auto& s : suites)
        if (!s.experimental && s.fail > 0) return false;
    return true;
}

std::vector<std::string> known_suites() {
    return {"theorem2_2", "prop2_5",         "prop4_2", "prop4_3",  "theorem5_1",
            "section6_compare", "stormer", "ckl_grid", "measures"};
}

BatchConfig default_batch_config() {
    BatchConfig cfg;
    for (const auto& name : known_suites()) cfg.suites.push_back(SuiteSpec{name, 0, 0});
    return cfg;
}

BatchConfig parse_batch_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw bad_config(std::string("malformed config JSON: ") + e.what());
    }
    BatchConfig cfg;
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("suites")) {
        if (!j.at("suites").is_array()) throw bad_config("config.suites must be an array");
        const auto known = known_suites();
        for (const auto& s : j.at("suites")) {
            SuiteSpec spec;
            if (s.is_string()) {
                spec.name = s.get<std::string>();
            } else if (s.is_object() && s.contains("name")) {
                spec.name = s.at("name").get<std::string>();
                if (s.contains("count")) spec.count = s.at("count").get<std::size_t>();
                if (s.contains("seed")) spec.seed = s.at("seed").get<std::uint64_t>();
            } else {
                throw bad_config("config.suites entries must be names or {name,...}");
            }
            if (std::find(known.begin(), known.end(), spec.name) == known.end())
                throw bad_config("unknown suite in config: " + spec.name);
            cfg.suites.push_back(spec);
        }
    } else {
        cfg.suites = default_batch_config().suites;
    }
    return cfg;
}

RunReport batch_verify(const BatchConfig& config) {
    RunReport report;
    report.seed = config.seed;
    for (const auto& spec_in : config.suites) {
        SuiteSpec spec = spec_in;
        if (spec.seed == 0) spec.seed = Rng(config.seed).split(fnv1a(spec.name)).next_u64();
        SuiteResult suite = dispatch(spec);
        for (const auto& c : suite.checks) {
            if (c.status == "pass")
                ++suite.pass;
            else if (c.status == "fail")
                ++suite.fail;
            else
                ++suite.inconclusive;
        }
        report.pass += suite.pass;
        report.fail += suite.experimental ? 0 : suite.fail;
        report.inconclusive += suite.inconclusive;
        report.suites.push_back(std::move(suite));
    }
    return report;
}

std::string report_to_json(const RunReport& report) {
    JsonWriter w;
    w.begin_object();
    w.key("schema").value("pptlab-report/1");
    w.key("tool_version").value(kToolVersion);
    w.key("seed").value(static_cast<std::size_t>(report.seed));
    w.key("suites").begin_array();
    for (const auto& s : report.suites) {
        w.begin_object();
        w.key("name").value(s.name);
        w.key("seed").value(static_cast<std::size_t>(s.seed));
        w.key("experimental").value(s.experimental);
        w.key("checks").begin_array();
        for (const auto& c : s.checks) {
            w.begin_object();
            w.key("name").value(c.name);
            w.key("status").value(c.status);
            w.key("metrics").begin_object();
            for (const auto& [k, v] : c.metrics) w.key(k).value(v);
            w.end_object();
            w.end_object();
        }
        w.end_array();
        w.key("summary").begin_object();
        w.key("pass").value(s.pass);
        w.key("fail").value(s.fail);
        w.key("inconclusive").value(s.inconclusive);
        w.end_object();
        w.end_object();
    }
    w.end_array();
    w.key("summary").begin_object();
    w.key("pass").value(report.pass);
    w.key("fail").value(report.fail);
    w.key("inconclusive").value(report.inconclusive);
    w.end_object();
    w.end_object();
    return w.str();
}

std::string report_to_csv(const RunReport& report) {
    std::string out = "suite,check,status,metrics\n";
    for (const auto& s : report.suites)
        for (const auto& c : s.checks) {
            out += s.name;
            out += ',';
            out += c.name;
            out += ',';
            out += c.status;
            out += ',';
            std::string m;
            for (const auto& [k, v] : c.metrics) {
                if (!m.empty()) m += '|';
                m += k;
                m += '=';
                m += format_double(v);
            }
            out += '"' + m + '"';
            out += '\n';
        }
    return out;
}

} // namespace pptlab
