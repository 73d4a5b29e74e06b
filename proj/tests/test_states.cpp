#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pptlab/eigen.hpp"
#include "pptlab/states.hpp"

using namespace pptlab;

TEST_CASE("product states are PPT") {
    Rng rng(1);
    for (int t = 0; t < 10; ++t) {
        ComplexMatrix a = random_psd(2, 2, rng, true);
        ComplexMatrix b = random_psd(3, 3, rng, true);
        BipartiteState s{FactorSplit{2, 3}, tensor_product(a, b)};
        CHECK(is_ppt(s).is_ppt);
    }
}

TEST_CASE("isotropic family") {
    // p = 0: maximally mixed, PPT.
    CHECK(is_ppt(isotropic(2, 0.0)).is_ppt);

    // p = 1, d = 2: pure maximally entangled, min eig -1/2.
    PPTVerdict pure = is_ppt(isotropic(2, 1.0));
    CHECK_FALSE(pure.is_ppt);
    CHECK(pure.min_eig == doctest::Approx(-0.5).epsilon(1e-10));

    // Analytic minimum eigenvalue (1 - 3p)/4 at d = 2.
    for (double p : {0.1, 0.3, 1.0 / 3.0, 0.5, 0.9}) {
        PPTVerdict v = is_ppt(isotropic(2, p));
        CHECK(v.min_eig == doctest::Approx((1.0 - 3.0 * p) / 4.0).epsilon(1e-9));
        CHECK(v.is_ppt == (p <= 1.0 / 3.0 + 1e-12));
        // The witness attains the minimum.
        ComplexMatrix pt = partial_transpose(isotropic(2, p).rho, FactorSplit{2, 2}, Factor::B);
        const cplx q = inner(v.witness, pt.apply(v.witness));
        CHECK(std::abs(q - v.min_eig) <= 1e-9);
    }

    // d = 3 sweep: PPT exactly for p <= 1/4.
    for (double p : {0.05, 0.15, 0.24, 0.26, 0.6})
        CHECK(is_ppt(isotropic(3, p)).is_ppt == (p <= 0.25));

    CHECK_THROWS_AS(isotropic(1, 0.5), bad_parameter);
    CHECK_THROWS_AS(isotropic(2, 1.5), bad_parameter);
}

TEST_CASE("random pure bipartite states") {
    // Schmidt (1, 0): a pure product state.
    SchmidtSpec prod;
    prod.coefficients = {1.0, 0.0};
    BipartiteState sp = random_pure_bipartite(FactorSplit{2, 2}, prod, 5);
    CHECK(is_ppt(sp).is_ppt);

    // Balanced coefficients: reduced state is I/2.
    SchmidtSpec bal;
    bal.coefficients = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    BipartiteState sb = random_pure_bipartite(FactorSplit{2, 2}, bal, 6);
    ComplexMatrix red = partial_trace(sb.rho, sb.split, Factor::B);
    CHECK((red - cplx(0.5) * ComplexMatrix::identity(2)).frobenius() <= 1e-10);

    // Haar with a fixed seed reproduces bit-identically.
    BipartiteState h1 = random_pure_bipartite(FactorSplit{3, 3}, SchmidtSpec{true, {}}, 42);
    BipartiteState h2 = random_pure_bipartite(FactorSplit{3, 3}, SchmidtSpec{true, {}}, 42);
    CHECK((h1.rho == h2.rho));

    SchmidtSpec bad;
    bad.coefficients = {0.5, 0.5};
    CHECK_THROWS_AS(random_pure_bipartite(FactorSplit{2, 2}, bad, 1), bad_parameter);
    SchmidtSpec toolong;
    toolong.coefficients = {1.0, 0.0, 0.0};
    CHECK_THROWS_AS(random_pure_bipartite(FactorSplit{2, 2}, toolong, 1), bad_parameter);
}

TEST_CASE("random densities and separable states") {
    ComplexMatrix r1 = random_density(4, 4, 9);
    CHECK((r1 == random_density(4, 4, 9)));
    CHECK(std::abs(r1.trace().real() - 1.0) <= 1e-12);
    EigenExtremes e = eig_extremes(r1);
    CHECK(e.min_value > 0.0); // full rank with probability one

    SeparableState sep = random_separable(FactorSplit{2, 2}, 4, 11);
    double wsum = 0.0;
    for (double w : sep.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0));
    // The stored decomposition reassembles the state.
    ComplexMatrix acc(4, 4);
    for (std::size_t t = 0; t < sep.weights.size(); ++t) {
        std::vector<cplx> prod = tensor_product(sep.xs[t], sep.ys[t]);
        acc += cplx(sep.weights[t]) * ComplexMatrix::outer(prod, prod);
    }
    CHECK((acc - sep.state.rho).frobenius() <= 1e-12);

    CHECK_THROWS_AS(random_separable(FactorSplit{2, 2}, 0, 1), bad_parameter);
    CHECK_THROWS_AS(random_density(3, 4, 1), bad_parameter);
}

TEST_CASE("every generated separable state is PPT") {
    const std::vector<FactorSplit> splits = {{2, 2}, {2, 3}, {3, 3}};
    std::size_t n = 0;
    for (const auto& split : splits) {
        for (std::uint64_t seed = 0; seed < 334; ++seed) {
            SeparableState s = random_separable(split, 1 + seed % 5, 1000 + seed);
            CHECK(is_ppt(s.state).is_ppt);
            ++n;
        }
    }
    CHECK(n >= 1000);
}

TEST_CASE("PPT verdict is local-unitary invariant") {
    Rng rng(23);
    for (int t = 0; t < 25; ++t) {
        BipartiteState s{FactorSplit{2, 3}, random_density(6, 1 + t % 6, 500 + t)};
        PPTVerdict v1 = is_ppt(s);
        ComplexMatrix u = tensor_product(haar_unitary(2, rng), haar_unitary(3, rng));
        BipartiteState rot{s.split, mul(mul(u, s.rho), u.adjoint()).hermitize()};
        PPTVerdict v2 = is_ppt(rot);
        CHECK(v1.is_ppt == v2.is_ppt);
        CHECK(std::abs(v1.min_eig - v2.min_eig) <= 1e-9);
    }
}

TEST_CASE("transposing either factor gives the same verdict") {
    for (int t = 0; t < 25; ++t) {
        BipartiteState s{FactorSplit{2, 3}, random_density(6, 6, 900 + t)};
        ComplexMatrix ta = partial_transpose(s.rho, s.split, Factor::A);
        ComplexMatrix tb = partial_transpose(s.rho, s.split, Factor::B);
        EigenExtremes ea = eig_extremes(ta.hermitize());
        EigenExtremes eb = eig_extremes(tb.hermitize());
        CHECK(std::abs(ea.min_value - eb.min_value) <= 1e-9);
    }
}

TEST_CASE("state validation") {
    BipartiteState bad{FactorSplit{2, 2}, ComplexMatrix::identity(4)}; // trace 4
    CHECK_THROWS_AS(validate_state(bad), not_a_state);
    BipartiteState wrong{FactorSplit{2, 3}, ComplexMatrix::identity(4)};
    CHECK_THROWS_AS(validate_state(wrong), not_a_state);
}
