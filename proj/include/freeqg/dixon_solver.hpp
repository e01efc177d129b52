#pragma once

#include "freeqg/exact_matrix.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace freeqg {

/// Exact solver for A x = b with A a nonsingular integer matrix whose entries
/// fit in 31 bits. A is factored once modulo a word-size prime; each solve
/// lifts the solution p-adically, recovers it by rational reconstruction and
/// checks A x = b exactly before returning.
class DixonSolver {
public:
    /// Throws SingularMatrix if A is singular modulo every candidate prime.
    explicit DixonSolver(const Matrix<mpz_class>& a);

    std::size_t size() const { return n_; }

    /// Exact rational solution. b entries must fit in 31 bits.
    std::vector<mpq_class> solve(const std::vector<mpz_class>& b) const;

private:
    std::vector<std::uint32_t> solve_mod_p(std::vector<std::uint64_t> rhs) const;

    std::size_t n_ = 0;
    std::uint64_t prime_ = 0;
    std::vector<std::int64_t> a_;        // row-major original matrix
    std::vector<std::uint32_t> lu_;      // packed LU factors mod p
    std::vector<std::size_t> perm_;      // row permutation of the factorization
};

} // namespace freeqg
