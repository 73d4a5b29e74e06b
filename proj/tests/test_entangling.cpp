#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pptlab/entangling.hpp"
#include "pptlab/mapspace.hpp"

using namespace pptlab;

namespace {

// H^* applied to e_i (x) f, computed straight from the adjoint formula in the
// construction: (H^*(e_i (x) f))[p] = sqrt(lambda_i) * sum_n conj(Ei[p][n]) f[n]
// for the default (computational) A-side basis.
std::vector<cplx> probe_oracle(const EntanglingOperator& h, std::size_t i,
                               const std::vector<cplx>& f) {
    const std::size_t dA = h.split.dA, dB = h.split.dB;
    std::vector<cplx> ei = h.source_eigs.vectors.col(i);
    const double lam = std::max(h.source_eigs.values[i], 0.0);
    std::vector<cplx> g(dA, cplx(0.0));
    for (std::size_t p = 0; p < dA; ++p)
        for (std::size_t n = 0; n < dB; ++n) g[p] += std::conj(ei[p * dB + n]) * f[n];
    for (auto& e : g) e *= std::sqrt(lam);
    return g;
}

std::vector<cplx> hstar_apply(const EntanglingOperator& h, const std::vector<cplx>& v) {
    return h.matrix.adjoint().apply(v);
}

} // namespace

TEST_CASE("adjoint probe identity") {
    Rng rng(2);
    for (const FactorSplit split : {FactorSplit{2, 2}, FactorSplit{2, 3}, FactorSplit{3, 3}}) {
        BipartiteState s{split, random_density(split.dim(), split.dim(), 77 + split.dim())};
        EntanglingOperator h = build_entangling_operator(s);
        for (int t = 0; t < 50; ++t) {
            const std::size_t i = rng.uniform_index(split.dim());
            std::vector<cplx> f = random_unit_vector(split.dB, rng);
            // e_i (x) f lives in (H (x) K) (x) K.
            std::vector<cplx> probe =
                tensor_product(h.source_eigs.vectors.col(i), f);
            std::vector<cplx> lhs = hstar_apply(h, probe);
            std::vector<cplx> rhs = probe_oracle(h, i, f);
            for (std::size_t p = 0; p < lhs.size(); ++p) lhs[p] -= rhs[p];
            CHECK(norm2(lhs) <= 1e-10);
        }
    }
}

TEST_CASE("pure product closed form of H") {
    Rng rng(5);
    std::vector<cplx> x = random_unit_vector(2, rng);
    std::vector<cplx> y = random_unit_vector(3, rng);
    std::vector<cplx> xy = tensor_product(x, y);
    BipartiteState s{FactorSplit{2, 3}, ComplexMatrix::outer(xy, xy)};
    EntanglingOperator h = build_entangling_operator(s);

    // H zeta = J(x (x) y) (x) (J_H zeta, x) y with the computational J_H.
    for (std::size_t q = 0; q < 2; ++q) {
        std::vector<cplx> zeta(2, cplx(0.0));
        zeta[q] = 1.0;
        std::vector<cplx> jxy(6);
        for (std::size_t u = 0; u < 6; ++u) jxy[u] = std::conj(xy[u]);
        // (J_H zeta, x) = sum_m conj(conj(zeta[m])) x[m] = x[q]
        std::vector<cplx> expected = tensor_product(jxy, y);
        for (auto& e : expected) e *= x[q];
        std::vector<cplx> got = h.matrix.col(q);
        for (std::size_t r = 0; r < got.size(); ++r) got[r] -= expected[r];
        CHECK(norm2(got) <= 1e-12);
    }
}

TEST_CASE("trace of H*H equals one") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        BipartiteState s{FactorSplit{2, 2}, random_density(4, 4, seed)};
        EntanglingOperator h = build_entangling_operator(s);
        CHECK(mul(h.matrix.adjoint(), h.matrix).trace().real() == doctest::Approx(1.0).epsilon(1e-10));
    }
    // Maximally mixed in particular.
    ComplexMatrix mm = ComplexMatrix::identity(6);
    mm *= cplx(1.0 / 6.0);
    EntanglingOperator h = build_entangling_operator(BipartiteState{FactorSplit{2, 3}, mm});
    CHECK(mul(h.matrix.adjoint(), h.matrix).trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("state representation through H") {
    // Product states: residual at roundoff.
    Rng rng(8);
    ComplexMatrix a = random_psd(2, 2, rng, true), b = random_psd(2, 2, rng, true);
    BipartiteState prod{FactorSplit{2, 2}, tensor_product(a, b)};
    CHECK(verify_representation(prod, 30, 4).max_residual <= 1e-12);

    // Random ensemble.
    for (const FactorSplit split : {FactorSplit{2, 2}, FactorSplit{3, 3}}) {
        double worst = 0.0;
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            BipartiteState s{split, random_density(split.dim(), 1 + seed % split.dim(),
                                                   3000 + seed)};
            worst = std::max(worst, verify_representation(s, 20, seed).max_residual);
        }
        CHECK(worst <= 1e-9);
    }

    // a = b = identity: both routes give exactly the normalization.
    BipartiteState s{FactorSplit{2, 2}, random_density(4, 4, 17)};
    EntanglingOperator h = build_entangling_operator(s);
    ComplexMatrix one4 = ComplexMatrix::identity(4);
    const cplx rhs = mul(jh_transpose(h, ComplexMatrix::identity(2)),
                         mul(mul(h.matrix.adjoint(),
                                 tensor_product(one4, ComplexMatrix::identity(2))),
                             h.matrix))
                         .trace();
    CHECK(std::abs(rhs - cplx(1.0)) <= 1e-10);
}

TEST_CASE("pairing identities of the two maps") {
    Rng rng(13);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        BipartiteState s{FactorSplit{2, 3}, random_density(6, 6, 40 + seed)};
        EntanglingOperator h = build_entangling_operator(s);
        auto [fwd, star] = entanglement_maps_from(h);
        for (int t = 0; t < 10; ++t) {
            ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(3, 3, rng);
            const cplx omega = mul(s.rho, tensor_product(a, b)).trace();
            const cplx via_star = mul(b, apply_entanglement_map(star, a)).trace();
            const cplx via_fwd = mul(a, apply_entanglement_map(fwd, b)).trace();
            CHECK(std::abs(omega - via_star) <= 1e-9 * std::max(1.0, std::abs(omega)));
            CHECK(std::abs(omega - via_fwd) <= 1e-9 * std::max(1.0, std::abs(omega)));
        }
        // Choi of the H route equals the reduced-density closed form.
        LinearMap closed = map_from_action(2, 3, [&](const ComplexMatrix& x) {
            return phi_star_closed_form(s, x);
        });
        CHECK((star.choi - closed.choi).frobenius() <= 1e-9);
    }
}

TEST_CASE("pure product separable closed form") {
    Rng rng(21);
    std::vector<cplx> e1 = {1.0, 0.0};
    std::vector<cplx> f2 = {0.0, 1.0, 0.0};
    std::vector<cplx> x = tensor_product(e1, f2);
    FactorSplit split{2, 3};
    ComplexMatrix a = ginibre(2, 2, rng);
    // phi*(a) = (x, a x) P_y with x = e_1, y = f_2: the (1,1)-entry of a
    // times the projector on f_2.
    ComplexMatrix got = phi_star_of_pure(x, split, a);
    ComplexMatrix expect = ComplexMatrix::outer(f2, f2);
    expect *= a(0, 0);
    CHECK((got - expect).max_abs() <= 1e-12);

    // General product vector, and the CP / co-CP verdicts.
    std::vector<cplx> u = random_unit_vector(2, rng), v = random_unit_vector(3, rng);
    std::vector<cplx> uv = tensor_product(u, v);
    ComplexMatrix a2 = ginibre(2, 2, rng);
    ComplexMatrix got2 = phi_star_of_pure(uv, split, a2);
    ComplexMatrix expect2 = ComplexMatrix::outer(v, v);
    expect2 *= inner(u, a2.apply(u));
    CHECK((got2 - expect2).max_abs() <= 1e-12);

    BipartiteState s{split, ComplexMatrix::outer(uv, uv)};
    auto [fwd, star] = entanglement_maps_from(build_entangling_operator(s));
    (void)fwd;
    CPClassification c = classify_cp(map_from_entanglement(star));
    CHECK(c.cp);
    CHECK(c.co_cp);
}

TEST_CASE("maximally entangled 3D maps") {
    auto [m1, m2] = example_maximally_entangled_maps();
    Rng rng(30);
    ComplexMatrix a = ginibre(3, 3, rng);

    // Second map: (1/3) * transpose, entrywise.
    ComplexMatrix r2 = apply_entanglement_map(m2, a);
    CHECK((r2 - cplx(1.0 / 3.0) * a.transpose()).max_abs() <= 1e-12);

    // First map: the signed permutation pattern.
    ComplexMatrix r1 = apply_entanglement_map(m1, a);
    ComplexMatrix expect = ComplexMatrix::from_rows({{a(2, 2), -a(0, 2), a(1, 2)},
                                                     {-a(2, 0), a(0, 0), -a(1, 0)},
                                                     {a(2, 1), -a(0, 1), a(1, 1)}});
    expect *= cplx(1.0 / 3.0);
    CHECK((r1 - expect).max_abs() <= 1e-12);

    // E_13 probe: single entry -1/3 at (1,2) in 1-based terms.
    ComplexMatrix p = apply_entanglement_map(m1, ComplexMatrix::unit(3, 0, 2));
    CHECK(std::abs(p(0, 1) - cplx(-1.0 / 3.0)) <= 1e-12);

    // Transposition scaled by 1/3 is co-CP but not CP.
    CPClassification c = classify_cp(map_from_entanglement(m2));
    CHECK_FALSE(c.cp);
    CHECK(c.co_cp);
}

TEST_CASE("CP violation witness for entangled pure vectors") {
    // Balanced two-term vector: value -1.
    SchmidtSpec bal;
    bal.coefficients = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    BipartiteState s = random_pure_bipartite(FactorSplit{2, 2}, bal, 3);
    HermitianEigen e = eig_hermitian(s.rho);
    std::vector<cplx> x = e.vectors.col(3);
    CPViolationWitness w = cp_violation_witness_pure(x, s.split);
    CHECK(w.value == doctest::Approx(-1.0).epsilon(1e-10));

    // Skewed coefficients: -2 sqrt(0.9 * 0.1) = -0.6.
    SchmidtSpec skew;
    skew.coefficients = {std::sqrt(0.9), std::sqrt(0.1)};
    BipartiteState s2 = random_pure_bipartite(FactorSplit{2, 2}, skew, 4);
    std::vector<cplx> x2 = eig_hermitian(s2.rho).vectors.col(3);
    CPViolationWitness w2 = cp_violation_witness_pure(x2, s2.split);
    CHECK(w2.value == doctest::Approx(-0.6).epsilon(1e-9));
    CHECK(std::abs(w2.value - w2.predicted) <= 1e-10);

    // Product vectors are rejected.
    std::vector<cplx> prod = tensor_product(std::vector<cplx>{1.0, 0.0},
                                            std::vector<cplx>{0.0, 1.0});
    CHECK_THROWS_AS(cp_violation_witness_pure(prod, FactorSplit{2, 2}), not_entangled);
}

TEST_CASE("CP of the entanglement map tracks the PPT verdict") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        FactorSplit split = (seed % 2) ? FactorSplit{2, 2} : FactorSplit{2, 3};
        BipartiteState s{split, random_density(split.dim(), 1 + seed % split.dim(),
                                               7000 + seed)};
        auto [fwd, star] = entanglement_maps_from(build_entangling_operator(s));
        (void)fwd;
        CPClassification c = classify_cp(map_from_entanglement(star));
        CHECK(c.co_cp);
        CHECK(c.cp == is_ppt(s).is_ppt);
    }
}
