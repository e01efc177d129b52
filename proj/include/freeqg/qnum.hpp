#pragma once

#include "freeqg/big_real.hpp"

#include <gmpxx.h>

#include <vector>

namespace freeqg {

/// Exact value of a q-integer [a]_q at q + 1/q = N. These are the Chebyshev
/// values U_{a-1}(N/2), always non-negative integers for a >= 0.
using QInt = mpz_class;

/// Dimension N together with its deformation parameter q in (0, 1],
/// q^2 - N q + 1 = 0, carried as a directed bracket.
class QContext {
public:
    /// Throws InvalidArgument for N < 2.
    explicit QContext(int N, int precision_bits = BigReal::default_bits);

    int dimension() const { return n_; }
    int precision_bits() const { return bits_; }
    const Bracket& q() const { return q_; }
    const BigReal& q_lower() const { return q_.lower; }
    const BigReal& q_upper() const { return q_.upper; }

private:
    int n_;
    int bits_;
    Bracket q_;
};

/// Root of q^2 - N q + 1 = 0 in (0, 1] with a rigorous bracket no wider than 2^-bits.
Bracket q_of_N(int N, int precision_bits = BigReal::default_bits);

/// [a]_q by the recursion [0] = 0, [1] = 1, [a+1] = N [a] - [a-1].
QInt q_int(int a, int N);

/// [0]_q, [1]_q, ..., [max_a]_q.
std::vector<QInt> q_ints(int max_a, int N);

/// [a]_q! with [0]_q! = 1.
mpz_class q_factorial(int a, int N);

/// dim V_k = [k+1]_q.
mpz_class dim_irrep(int k, int N);

/// Highest weights of U^n (x) U^k: n+k, n+k-2, ..., |n-k|.
std::vector<int> fusion_summands(int n, int k);

} // namespace freeqg
