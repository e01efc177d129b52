#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace freeqg {

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            if (a(i, l) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, l) * b(l, j);
        }
    return out;
}

/// Inverse of an integer matrix written as adjugate / determinant.
struct IntegerInverse {
    Matrix<mpz_class> adjugate;
    mpz_class determinant;

    mpq_class entry(std::size_t i, std::size_t j) const {
        mpq_class r(adjugate(i, j), determinant);
        r.canonicalize();
        return r;
    }
};

/// Fraction-free Gauss-Jordan (Bareiss) inversion. Every intermediate
/// division is exact. Throws SingularMatrix when the determinant is zero.
IntegerInverse bareiss_inverse(const Matrix<mpz_class>& a);

/// Determinant by fraction-free elimination.
mpz_class bareiss_determinant(const Matrix<mpz_class>& a);

/// Diagonal of D in A = L D L^T over the rationals, without pivoting.
/// Throws SingularMatrix on a zero pivot.
std::vector<mpq_class> ldlt_pivots(const Matrix<mpq_class>& a);

Matrix<mpq_class> to_rational(const Matrix<mpz_class>& a);

} // namespace freeqg
