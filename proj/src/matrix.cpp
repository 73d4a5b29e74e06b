#include "pptlab/matrix.hpp"

#include <cmath>

#include "pptlab/parallel.hpp"

namespace pptlab {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw dimension_mismatch("entry count does not match rows*cols");
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw dimension_mismatch("ragged row list");
        std::size_t j = 0;
        for (const auto& e : row) m(i, j++) = e;
        ++i;
    }
    return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
    ComplexMatrix m(n, n);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_mismatch("add: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_mismatch("sub: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& e : data_) e *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = std::conj(data_[i]);
    return m;
}

cplx ComplexMatrix::trace() const {
    if (!square()) throw dimension_mismatch("trace of non-square matrix");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius() const {
    double s = 0.0;
    for (const auto& e : data_) s += std::norm(e);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& e : data_) m = std::max(m, std::abs(e));
    return m;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& e : data_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
}

double ComplexMatrix::hermiticity_defect() const {
    if (!square()) throw dimension_mismatch("hermiticity defect of non-square matrix");
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            cplx d = (*this)(i, j) - std::conj((*this)(j, i));
            s += std::norm(d);
        }
    return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::hermitize() const {
    if (!square()) throw dimension_mismatch("hermitize non-square matrix");
    ComplexMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return m;
}

std::vector<cplx> ComplexMatrix::col(std::size_t j) const {
    std::vector<cplx> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

std::vector<cplx> ComplexMatrix::row(std::size_t i) const {
    std::vector<cplx> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

void ComplexMatrix::set_col(std::size_t j, const std::vector<cplx>& v) {
    if (v.size() != rows_) throw dimension_mismatch("set_col: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

std::vector<cplx> ComplexMatrix::apply(const std::vector<cplx>& v) const {
    if (v.size() != cols_) throw dimension_mismatch("apply: length mismatch");
    std::vector<cplx> out(rows_, cplx(0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
        cplx acc = 0.0;
        const cplx* rowp = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) acc += rowp[j] * v[j];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mul(a, b); }

namespace {

inline void mul_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out,
                    std::size_t i) {
    const std::size_t n = a.cols(), c = b.cols();
    for (std::size_t j = 0; j < c; ++j) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
        out(i, j) = acc;
    }
}

} // namespace

ComplexMatrix mul_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw dimension_mismatch("mul: inner dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) mul_row(a, b, out, i);
    return out;
}

ComplexMatrix mul_parallel(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw dimension_mismatch("mul: inner dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.rows());
#ifdef PPTLAB_HAS_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) mul_row(a, b, out, static_cast<std::size_t>(i));
    return out;
}

ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    // Row-parallel kernel is bit-identical to the serial one; only use it
    // when the product is big enough to amortize the fork.
    if (thread_count() > 1 && a.rows() * a.cols() * b.cols() >= 64 * 64 * 64)
        return mul_parallel(a, b);
    return mul_serial(a, b);
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

std::vector<cplx> tensor_product(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            out[i * b.size() + k] = a[i] * b[k];
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const FactorSplit& split, Factor traced_out) {
    const std::size_t dA = split.dA, dB = split.dB;
    if (!m.square() || m.rows() != dA * dB)
        throw dimension_mismatch("partial_trace: matrix side does not match split");
    if (traced_out == Factor::B) {
        ComplexMatrix out(dA, dA);
        for (std::size_t i = 0; i < dA; ++i)
            for (std::size_t j = 0; j < dA; ++j) {
                cplx acc = 0.0;
                for (std::size_t k = 0; k < dB; ++k) acc += m(i * dB + k, j * dB + k);
                out(i, j) = acc;
            }
        return out;
    }
    ComplexMatrix out(dB, dB);
    for (std::size_t k = 0; k < dB; ++k)
        for (std::size_t l = 0; l < dB; ++l) {
            cplx acc = 0.0;
            for (std::size_t i = 0; i < dA; ++i) acc += m(i * dB + k, i * dB + l);
            out(k, l) = acc;
        }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const FactorSplit& split, Factor f) {
    const std::size_t dA = split.dA, dB = split.dB;
    if (!m.square() || m.rows() != dA * dB)
        throw dimension_mismatch("partial_transpose: matrix side does not match split");
    ComplexMatrix out(dA * dB, dA * dB);
    for (std::size_t i = 0; i < dA; ++i)
        for (std::size_t k = 0; k < dB; ++k)
            for (std::size_t j = 0; j < dA; ++j)
                for (std::size_t l = 0; l < dB; ++l) {
                    if (f == Factor::B)
                        out(i * dB + k, j * dB + l) = m(i * dB + l, j * dB + k);
                    else
                        out(i * dB + k, j * dB + l) = m(j * dB + k, i * dB + l);
                }
    return out;
}

double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& e : v) s += std::norm(e);
    return std::sqrt(s);
}

cplx inner(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    if (u.size() != v.size()) throw dimension_mismatch("inner: length mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

void normalize(std::vector<cplx>& v) {
    double n = norm2(v);
    if (n == 0.0) throw bad_parameter("cannot normalize the zero vector");
    for (auto& e : v) e /= n;
}

} // namespace pptlab
