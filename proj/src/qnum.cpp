#include "freeqg/qnum.hpp"

#include "freeqg/error.hpp"

#include <algorithm>
#include <string>

namespace freeqg {

namespace {

void require_dimension(int N) {
    if (N < 2) throw InvalidArgument("invalid dimension N=" + std::to_string(N) + " (need N >= 2)");
}

void require_non_negative(int a, const char* what) {
    if (a < 0) throw InvalidArgument(std::string(what) + " must be non-negative, got " + std::to_string(a));
}

} // namespace

Bracket q_of_N(int N, int precision_bits) {
    require_dimension(N);
    if (precision_bits < 16) throw InvalidArgument("precision_bits must be at least 16");
    // q = 2 / (N + sqrt(N^2 - 4)); this form has no cancellation for large N.
    const int work = precision_bits + 16;
    BigReal disc(static_cast<long>(N) * N - 4, work);
    BigReal n(static_cast<long>(N), work);
    BigReal two(2L, work);

    BigReal root_lo = sqrt(disc, Round::down);
    BigReal root_hi = sqrt(disc, Round::up);
    BigReal q_lo = div(two, add(n, root_hi, Round::up), Round::down);
    BigReal q_hi = div(two, add(n, root_lo, Round::down), Round::up);

    Bracket out{BigReal(precision_bits), BigReal(precision_bits)};
    mpfr_set(out.lower.get(), q_lo.get(), MPFR_RNDD);
    mpfr_set(out.upper.get(), q_hi.get(), MPFR_RNDU);
    return out;
}

QContext::QContext(int N, int precision_bits)
    : n_(N), bits_(precision_bits), q_(q_of_N(N, precision_bits)) {}

std::vector<QInt> q_ints(int max_a, int N) {
    require_dimension(N);
    require_non_negative(max_a, "q-integer argument");
    std::vector<QInt> out(static_cast<std::size_t>(max_a) + 1);
    out[0] = 0;
    if (max_a >= 1) out[1] = 1;
    for (int a = 1; a < max_a; ++a) out[a + 1] = N * out[a] - out[a - 1];
    return out;
}

QInt q_int(int a, int N) { return q_ints(a, N).back(); }

mpz_class q_factorial(int a, int N) {
    auto values = q_ints(a, N);
    mpz_class product = 1;
    for (int s = 1; s <= a; ++s) product *= values[s];
    return product;
}

mpz_class dim_irrep(int k, int N) {
    require_non_negative(k, "irrep label");
    return q_int(k + 1, N);
}

std::vector<int> fusion_summands(int n, int k) {
    require_non_negative(n, "irrep label");
    require_non_negative(k, "irrep label");
    std::vector<int> out;
    for (int r = 0; r <= std::min(n, k); ++r) out.push_back(n + k - 2 * r);
    return out;
}

} // namespace freeqg
