#include "freeqg/exact_matrix.hpp"

#include "freeqg/error.hpp"

#include <utility>

namespace freeqg {

namespace {

void require_square(std::size_t rows, std::size_t cols) {
    if (rows != cols) throw InvalidArgument("matrix must be square");
}

// Swap a nonzero entry into the pivot slot of column k. Returns false if the
// column is zero from row k downwards.
bool pivot_rows(Matrix<mpz_class>& m, std::size_t k, int& sign) {
    if (sgn(m(k, k)) != 0) return true;
    for (std::size_t i = k + 1; i < m.rows(); ++i) {
        if (sgn(m(i, k)) == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(k, j), m(i, j));
        sign = -sign;
        return true;
    }
    return false;
}

} // namespace

IntegerInverse bareiss_inverse(const Matrix<mpz_class>& a) {
    require_square(a.rows(), a.cols());
    const std::size_t n = a.rows();
    const std::size_t width = 2 * n;
    Matrix<mpz_class> m(n, width);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
        m(i, n + i) = 1;
    }

    mpz_class prev = 1;
    mpz_class tmp;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (!pivot_rows(m, k, sign)) throw SingularMatrix("bareiss_inverse: singular matrix");
        mpz_srcptr pivot = m(k, k).get_mpz_t();
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            mpz_srcptr factor = m(i, k).get_mpz_t();
            const bool factor_zero = mpz_sgn(factor) == 0;
            for (std::size_t j = k + 1; j < width; ++j) {
                mpz_ptr target = m(i, j).get_mpz_t();
                mpz_srcptr row_k = m(k, j).get_mpz_t();
                const bool row_k_zero = mpz_sgn(row_k) == 0;
                if (mpz_sgn(target) == 0 && (factor_zero || row_k_zero)) continue;
                // target = (pivot * target - factor * row_k) / prev
                mpz_mul(tmp.get_mpz_t(), pivot, target);
                if (!factor_zero && !row_k_zero) mpz_submul(tmp.get_mpz_t(), factor, row_k);
                mpz_divexact(target, tmp.get_mpz_t(), prev.get_mpz_t());
            }
            // Columns left of k are already zero off the diagonal; diagonal
            // entries of earlier rows rescale to the new pivot.
            if (i < k) m(i, i) = m(k, k);
            m(i, k) = 0;
        }
        prev = m(k, k);
    }

    IntegerInverse out{Matrix<mpz_class>(n, n), sign * prev};
    // The accumulated row operations L satisfy L A = prev I, so the right
    // block is prev A^{-1}, and prev = sign * det A.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.adjugate(i, j) = sign * m(i, n + j);
    return out;
}

mpz_class bareiss_determinant(const Matrix<mpz_class>& a) {
    require_square(a.rows(), a.cols());
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Matrix<mpz_class> m = a;
    mpz_class prev = 1;
    mpz_class tmp;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (!pivot_rows(m, k, sign)) return 0;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_mul(tmp.get_mpz_t(), m(k, k).get_mpz_t(), m(i, j).get_mpz_t());
                mpz_submul(tmp.get_mpz_t(), m(i, k).get_mpz_t(), m(k, j).get_mpz_t());
                mpz_divexact(m(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::vector<mpq_class> ldlt_pivots(const Matrix<mpq_class>& a) {
    require_square(a.rows(), a.cols());
    const std::size_t n = a.rows();
    Matrix<mpq_class> l = Matrix<mpq_class>::identity(n);
    std::vector<mpq_class> d(n);
    for (std::size_t j = 0; j < n; ++j) {
        mpq_class dj = a(j, j);
        for (std::size_t s = 0; s < j; ++s) dj -= l(j, s) * l(j, s) * d[s];
        if (sgn(dj) == 0) throw SingularMatrix("ldlt_pivots: zero pivot at " + std::to_string(j));
        d[j] = dj;
        for (std::size_t i = j + 1; i < n; ++i) {
            mpq_class v = a(i, j);
            for (std::size_t s = 0; s < j; ++s) v -= l(i, s) * l(j, s) * d[s];
            l(i, j) = v / dj;
        }
    }
    return d;
}

Matrix<mpq_class> to_rational(const Matrix<mpz_class>& a) {
    Matrix<mpq_class> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    return out;
}

} // namespace freeqg
