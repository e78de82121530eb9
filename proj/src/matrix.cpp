#include "mlmat/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace mlmat {

bool ComplexMatrix::is_finite() const {
    for (const Complex& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

bool ComplexMatrix::is_upper_triangular() const {
    if (!is_square()) return false;
    for (std::size_t i = 1; i < rows_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if ((*this)(i, j) != Complex(0.0, 0.0)) return false;
    return true;
}

bool ComplexMatrix::is_real() const {
    for (const Complex& v : data_)
        if (v.imag() != 0.0) return false;
    return true;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix T(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
    return T;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix T(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) T(j, i) = std::conj((*this)(i, j));
    return T;
}

namespace {
void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
}
} // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    check_same_shape(*this, rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    check_same_shape(*this, rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (Complex& v : data_) v *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

double frobenius_norm(const ComplexMatrix& A) {
    double s = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) s += std::norm(A(i, j));
    return std::sqrt(s);
}

double one_norm(const ComplexMatrix& A) {
    double best = 0.0;
    for (std::size_t j = 0; j < A.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < A.rows(); ++i) col += std::abs(A(i, j));
        best = std::max(best, col);
    }
    return best;
}

double max_abs(const ComplexMatrix& A) {
    double best = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) best = std::max(best, std::abs(A(i, j)));
    return best;
}

} // namespace mlmat
