#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pptlab/eigen.hpp"
#include "pptlab/rng.hpp"

using namespace pptlab;

TEST_CASE("diagonal and Pauli spectra") {
    HermitianEigen e = eig_hermitian(ComplexMatrix::diag({3, 1, 2}));
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(2.0));
    CHECK(e.values[2] == doctest::Approx(3.0));
    // Eigenvectors of a diagonal matrix are a permuted identity.
    for (std::size_t k = 0; k < 3; ++k) {
        std::vector<cplx> v = e.vector(k);
        double mx = 0.0;
        for (const auto& x : v) mx = std::max(mx, std::abs(x));
        CHECK(mx == doctest::Approx(1.0));
    }
    CHECK(e.vectors(1, 0) == cplx(1.0)); // value 1 sits at index 1

    ComplexMatrix px = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
    HermitianEigen ex = eig_hermitian(px);
    CHECK(ex.values[0] == doctest::Approx(-1.0));
    CHECK(ex.values[1] == doctest::Approx(1.0));
}

TEST_CASE("random Hermitian reconstruction and residuals") {
    Rng rng(3);
    ComplexMatrix m = random_hermitian(9, rng);
    HermitianEigen e = eig_hermitian(m);
    CHECK((reconstruct(e) - m).frobenius() <= 1e-10 * std::max(1.0, m.frobenius()));

    // Orthonormality within 1e-10 * dim.
    ComplexMatrix g = mul(e.vectors.adjoint(), e.vectors) - ComplexMatrix::identity(9);
    CHECK(g.frobenius() <= 1e-10 * 9);

    // Per-vector residual against the operator norm.
    const double opn = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    for (std::size_t k = 0; k < 9; ++k) {
        std::vector<cplx> v = e.vector(k);
        std::vector<cplx> mv = m.apply(v);
        for (std::size_t i = 0; i < 9; ++i) mv[i] -= e.values[k] * v[i];
        CHECK(norm2(mv) <= 1e-10 * std::max(1.0, opn));
    }

    // Reconstruction holds through dimension 81.
    ComplexMatrix big = random_hermitian(81, rng);
    HermitianEigen eb = eig_hermitian(big);
    CHECK((reconstruct(eb) - big).frobenius() <= 1e-9 * big.frobenius());
}

TEST_CASE("hermiticity validation") {
    ComplexMatrix bad = ComplexMatrix::from_rows({{0, 1}, {2, 0}});
    CHECK_THROWS_AS(eig_hermitian(bad), not_hermitian);
    // A defect below 1e-12 * ||M||_F is symmetrized away.
    ComplexMatrix ok = ComplexMatrix::from_rows({{1.0, 1.0}, {1.0 + 1e-14, 2.0}});
    CHECK_NOTHROW(eig_hermitian(ok));
}

TEST_CASE("fractional powers") {
    ComplexMatrix r = frac_power(ComplexMatrix::diag({4, 9}), 0.5);
    CHECK(r(0, 0).real() == doctest::Approx(2.0));
    CHECK(r(1, 1).real() == doctest::Approx(3.0));

    for (double p : {-1.0, -0.5, 0.25, 1.0, 2.0})
        CHECK((frac_power(ComplexMatrix::identity(3), p) - ComplexMatrix::identity(3))
                  .frobenius() <= 1e-12);

    // Composition oracle: p = 1/4 applied four times recovers the matrix.
    Rng rng(12);
    ComplexMatrix w = random_psd(4, 4, rng);
    ComplexMatrix q = w;
    ComplexMatrix quarter = frac_power(w, 0.25);
    q = mul(mul(quarter, quarter), mul(quarter, quarter));
    CHECK((q - w).frobenius() <= 1e-8 * std::max(1.0, w.frobenius()));

    // Semigroup property on spectra bounded away from zero.
    ComplexMatrix m = random_psd(4, 4, rng) + ComplexMatrix::identity(4);
    ComplexMatrix lhs = mul(frac_power(m, 0.3), frac_power(m, 0.45));
    CHECK((lhs - frac_power(m, 0.75)).frobenius() <= 1e-9 * m.frobenius());

    // sqrt squared = M on the range.
    ComplexMatrix s = sqrt_psd(w);
    CHECK((mul(s, s) - w).frobenius() <= 1e-9 * std::max(1.0, norms(w).op));

    ComplexMatrix neg = ComplexMatrix::diag({1.0, -0.5});
    CHECK_THROWS_AS(frac_power(neg, 0.5), not_psd);
}

TEST_CASE("psd projection") {
    ComplexMatrix r = psd_project(ComplexMatrix::diag({2, -1}));
    CHECK(r(0, 0).real() == doctest::Approx(2.0));
    CHECK(r(1, 1).real() == doctest::Approx(0.0));

    Rng rng(4);
    ComplexMatrix w = random_psd(4, 4, rng);
    CHECK((psd_project(w) - w).frobenius() <= 1e-12 * std::max(1.0, w.frobenius()));

    // Frobenius optimality against random feasible competitors.
    ComplexMatrix h = random_hermitian(4, rng);
    ComplexMatrix proj = psd_project(h);
    const double dist = (h - proj).frobenius();
    for (int t = 0; t < 1000; ++t) {
        ComplexMatrix x = random_psd(4, 1 + rng.uniform_index(4), rng);
        x *= cplx(rng.uniform(0.0, 3.0));
        CHECK((h - x).frobenius() >= dist - 1e-12);
    }
    CHECK_THROWS_AS(psd_project(ComplexMatrix::from_rows({{0, 1}, {2, 0}})), not_hermitian);
}

TEST_CASE("norms") {
    MatrixNorms n = norms(ComplexMatrix::diag({1, -2}));
    CHECK(n.op == doctest::Approx(2.0));
    CHECK(n.trace == doctest::Approx(3.0));
    CHECK(n.frobenius == doctest::Approx(std::sqrt(5.0)));

    Rng rng(6);
    std::vector<cplx> u = random_unit_vector(4, rng), v = random_unit_vector(4, rng);
    MatrixNorms r1 = norms(ComplexMatrix::outer(u, v));
    CHECK(r1.op == doctest::Approx(1.0));
    CHECK(r1.trace == doctest::Approx(1.0));
    CHECK(r1.frobenius == doctest::Approx(1.0));

    // Hermitian input: trace norm equals the absolute eigenvalue sum.
    ComplexMatrix h = random_hermitian(5, rng);
    HermitianEigen e = eig_hermitian(h);
    double expected = 0.0;
    for (double lam : e.values) expected += std::abs(lam);
    CHECK(norms(h).trace == doctest::Approx(expected).epsilon(1e-10));
    CHECK(norms(h).trace >= norms(h).op - 1e-12);
    CHECK(norms(h).trace >= norms(h).frobenius - 1e-12);
}

TEST_CASE("jordan decomposition") {
    auto parts = jordan_decompose(ComplexMatrix::diag({1, -2}));
    CHECK((parts[0] - ComplexMatrix::diag({1, 0})).frobenius() <= 1e-12);
    CHECK((parts[1] - ComplexMatrix::diag({0, 2})).frobenius() <= 1e-12);
    CHECK(parts[2].frobenius() <= 1e-12);
    CHECK(parts[3].frobenius() <= 1e-12);

    ComplexMatrix im = cplx(0.0, 1.0) * ComplexMatrix::identity(2);
    auto pim = jordan_decompose(im);
    CHECK((pim[2] - ComplexMatrix::identity(2)).frobenius() <= 1e-12);

    Rng rng(8);
    ComplexMatrix a = ginibre(3, 3, rng);
    auto p = jordan_decompose(a);
    ComplexMatrix rec = p[0] - p[1] + cplx(0.0, 1.0) * p[2] - cplx(0.0, 1.0) * p[3];
    CHECK((rec - a).frobenius() <= 1e-12 * std::max(1.0, a.frobenius()));
    CHECK(mul(p[0], p[1]).frobenius() <= 1e-10 * std::max(1.0, a.frobenius()));
    CHECK(mul(p[2], p[3]).frobenius() <= 1e-10 * std::max(1.0, a.frobenius()));
}
