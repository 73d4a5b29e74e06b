#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pptlab/eigen.hpp"
#include "pptlab/matrix.hpp"
#include "pptlab/rng.hpp"

using namespace pptlab;

TEST_CASE("tensor product basics") {
    ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK((tensor_product(i2, i2) == ComplexMatrix::identity(4)));

    // E_11 (x) E_22 has its single entry at composite index (0*2+1, 0*2+1).
    ComplexMatrix e11 = ComplexMatrix::unit(2, 0, 0);
    ComplexMatrix e22 = ComplexMatrix::unit(2, 1, 1);
    ComplexMatrix t = tensor_product(e11, e22);
    CHECK(t(1, 1) == cplx(1.0));
    CHECK(t.frobenius() == doctest::Approx(1.0));
}

TEST_CASE("mixed product identity") {
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(2, 2, rng);
        ComplexMatrix c = ginibre(2, 2, rng), d = ginibre(2, 2, rng);
        ComplexMatrix lhs = mul(tensor_product(a, b), tensor_product(c, d));
        ComplexMatrix rhs = tensor_product(mul(a, c), mul(b, d));
        CHECK((lhs - rhs).max_abs() <= 1e-12 * std::max(1.0, rhs.max_abs()));
    }
}

TEST_CASE("partial trace") {
    Rng rng(7);
    FactorSplit split{2, 2};

    ComplexMatrix x = ginibre(2, 2, rng), y = ginibre(2, 2, rng);
    ComplexMatrix m = tensor_product(x, y);
    ComplexMatrix trb = partial_trace(m, split, Factor::B);
    ComplexMatrix expect = y.trace() * x;
    CHECK((trb - expect).max_abs() <= 1e-12 * std::max(1.0, expect.max_abs()));

    ComplexMatrix tra = partial_trace(ComplexMatrix::identity(4), split, Factor::A);
    CHECK((tra - cplx(2.0) * ComplexMatrix::identity(2)).max_abs() <= 1e-14);

    // Tr_B(|Phi+><Phi+|) = I/2, checked against a direct index sum.
    std::vector<cplx> phi = {cplx(1 / std::sqrt(2.0)), 0.0, 0.0, cplx(1 / std::sqrt(2.0))};
    ComplexMatrix p = ComplexMatrix::outer(phi, phi);
    ComplexMatrix red = partial_trace(p, split, Factor::B);
    ComplexMatrix direct(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) direct(i, j) += p(i * 2 + k, j * 2 + k);
    CHECK((red - direct).max_abs() == 0.0);
    CHECK((red - cplx(0.5) * ComplexMatrix::identity(2)).max_abs() <= 1e-14);

    // Trace is preserved.
    ComplexMatrix r = ginibre(6, 6, rng);
    CHECK(std::abs(partial_trace(r, FactorSplit{2, 3}, Factor::B).trace() - r.trace()) <= 1e-13);
    CHECK_THROWS_AS(partial_trace(r, FactorSplit{2, 2}, Factor::B), dimension_mismatch);
}

TEST_CASE("partial transpose") {
    Rng rng(11);
    FactorSplit split{2, 2};

    // Basis action: (E_ij (x) F_kl)^{t_B} = E_ij (x) F_lk
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) {
                    ComplexMatrix m = tensor_product(ComplexMatrix::unit(2, i, j),
                                                     ComplexMatrix::unit(2, k, l));
                    ComplexMatrix expect = tensor_product(ComplexMatrix::unit(2, i, j),
                                                          ComplexMatrix::unit(2, l, k));
                    CHECK((partial_transpose(m, split, Factor::B) - expect).max_abs() == 0.0);
                }

    ComplexMatrix r = ginibre(4, 4, rng);
    ComplexMatrix twice = partial_transpose(partial_transpose(r, split, Factor::B), split,
                                            Factor::B);
    CHECK((twice - r).max_abs() == 0.0);

    ComplexMatrix h = random_hermitian(4, rng);
    CHECK(partial_transpose(h, split, Factor::B).hermiticity_defect() <= 1e-14);

    // Full transpose = t_A then t_B.
    ComplexMatrix full =
        partial_transpose(partial_transpose(r, split, Factor::A), split, Factor::B);
    CHECK((full - r.transpose()).max_abs() == 0.0);

    // Frobenius isometry (entry permutation).
    CHECK(partial_transpose(r, split, Factor::B).frobenius() == doctest::Approx(r.frobenius()));

    // (A (x) B)^{t_B} = A (x) B^t
    ComplexMatrix a = ginibre(2, 2, rng), b = ginibre(2, 2, rng);
    CHECK((partial_transpose(tensor_product(a, b), split, Factor::B) -
           tensor_product(a, b.transpose()))
              .max_abs() <= 1e-12);

    // |Phi+><Phi+|^{t_B} = SWAP/2 with minimum eigenvalue -1/2.
    std::vector<cplx> phi = {cplx(1 / std::sqrt(2.0)), 0.0, 0.0, cplx(1 / std::sqrt(2.0))};
    ComplexMatrix pt = partial_transpose(ComplexMatrix::outer(phi, phi), split, Factor::B);
    HermitianEigen e = eig_hermitian(pt);
    CHECK(e.values.front() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(pt(1, 2) == cplx(0.5));
    CHECK(pt(0, 3) == cplx(0.0));
}

TEST_CASE("serial and parallel products agree bit for bit") {
    Rng rng(5);
    for (auto [r, k, c] : {std::tuple<int, int, int>{3, 5, 4}, {17, 9, 30}, {64, 64, 64}}) {
        ComplexMatrix a = ginibre(r, k, rng), b = ginibre(k, c, rng);
        CHECK((mul_serial(a, b) == mul_parallel(a, b)));
    }
    ComplexMatrix a = ginibre(2, 3, rng);
    CHECK_THROWS_AS(mul(a, a), dimension_mismatch);
}

TEST_CASE("vector helpers") {
    std::vector<cplx> u = {cplx(3.0), cplx(0.0, 4.0)};
    CHECK(norm2(u) == doctest::Approx(5.0));
    normalize(u);
    CHECK(norm2(u) == doctest::Approx(1.0));
    std::vector<cplx> zero = {0.0, 0.0};
    CHECK_THROWS_AS(normalize(zero), bad_parameter);
}
