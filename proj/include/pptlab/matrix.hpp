#ifndef PPTLAB_MATRIX_HPP
#define PPTLAB_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "pptlab/errors.hpp"

namespace pptlab {

using cplx = std::complex<double>;

// Dense complex matrix, row-major.  This is the one numeric carrier used
// everywhere; dimensions stay small (<= ~100) so everything is plain O(n^3)
// dense arithmetic.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    // Row-major list-of-rows constructor for tests and fixtures.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);
    // Unit matrix E_ij (1 at (i,j)).
    static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);
    static ComplexMatrix diag(const std::vector<double>& d);
    // Rank-one |u><v|.
    static ComplexMatrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    std::size_t size() const { return data_.size(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    ComplexMatrix adjoint() const;     // conjugate transpose
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;

    cplx trace() const;
    double frobenius() const;
    // max_ij |entry|
    double max_abs() const;
    bool all_finite() const;

    // ||M - M^*||_F
    double hermiticity_defect() const;
    // (M + M^*)/2
    ComplexMatrix hermitize() const;

    // Column / row access as vectors
    std::vector<cplx> col(std::size_t j) const;
    std::vector<cplx> row(std::size_t i) const;
    void set_col(std::size_t j, const std::vector<cplx>& v);

    // Matrix-vector product
    std::vector<cplx> apply(const std::vector<cplx>& v) const;

    bool operator==(const ComplexMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Reference kernel, single thread.  mul() dispatches to an OpenMP kernel for
// larger products; both produce bit-identical results because each output
// entry is accumulated in the same order.
ComplexMatrix mul_serial(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mul_parallel(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);

// Dimensions of the two tensor factors of H_A (x) H_B.  A matrix tagged with
// a split has side dA*dB and composite index i*dB + k.
struct FactorSplit {
    std::size_t dA = 1;
    std::size_t dB = 1;
    std::size_t dim() const { return dA * dB; }
    bool operator==(const FactorSplit&) const = default;
};

enum class Factor { A, B };

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<cplx> tensor_product(const std::vector<cplx>& a, const std::vector<cplx>& b);

// Trace out one factor; factor names the subsystem that is REMOVED.
ComplexMatrix partial_trace(const ComplexMatrix& m, const FactorSplit& split, Factor traced_out);

// Transposition of one tensor factor in the computational basis.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const FactorSplit& split, Factor f);

// Vector helpers
double norm2(const std::vector<cplx>& v);
cplx inner(const std::vector<cplx>& u, const std::vector<cplx>& v); // <u|v>, conjugate-linear in u
void normalize(std::vector<cplx>& v);

} // namespace pptlab

#endif
