#include "freeqg/rapid_decay.hpp"

#include "freeqg/error.hpp"
#include "freeqg/qnum.hpp"

#include <algorithm>

namespace freeqg {

bool ThreeVertexParams::admissible() const {
    if (n < 0 || k < 0 || l < 0) return false;
    const int twice_r = n + k - l;
    if (twice_r < 0 || twice_r % 2 != 0) return false;
    return twice_r / 2 <= std::min(n, k);
}

int ThreeVertexParams::r() const {
    if (!admissible())
        throw InvalidArgument("inadmissible three-vertex (n,k,l)=(" + std::to_string(n) + "," + std::to_string(k) + "," +
                              std::to_string(l) + ")");
    return (n + k - l) / 2;
}

namespace {

void require_rd_dimension(int N) {
    if (N < 3) throw InvalidArgument("rapid-decay quantities need N >= 3, got N=" + std::to_string(N));
}

} // namespace

mpq_class three_vertex_norm_inv_factorial(const ThreeVertexParams& params, int N) {
    require_rd_dimension(N);
    const int r = params.r();
    const auto& [n, k, l] = params;
    auto fact = [&](int a) { return q_factorial(a, N); };
    mpq_class out(q_int(r + 1, N) * fact(l + 1) * fact(n) * fact(k), fact(l + 1 + r) * fact(n - r) * fact(k - r) * fact(r));
    out.canonicalize();
    return out;
}

mpq_class three_vertex_norm_inv_product(const ThreeVertexParams& params, int N) {
    require_rd_dimension(N);
    const int r = params.r();
    const auto& [n, k, l] = params;
    const auto q = q_ints(std::max({l + 1 + r, n, k, r + 1}), N);
    mpz_class num = 1, den = 1;
    for (int s = 1; s <= r; ++s) {
        num *= q[1 + s] * q[n - r + s] * q[k - r + s];
        den *= q[l + 1 + s] * q[s] * q[s];
    }
    mpq_class out(num, den);
    out.canonicalize();
    return out;
}

mpq_class prefactor(const ThreeVertexParams& params, int N) {
    require_rd_dimension(N);
    const int r = params.r();
    const auto& [n, k, l] = params;
    const auto q = q_ints(std::max({n, k, l, r}) + 1, N);
    mpq_class out(q[k + 1] * q[n + 1], q[l + 1] * q[r + 1] * q[r + 1]);
    out.canonicalize();
    return out;
}

std::string ScanPoint::n() const { return n_minus_r ? std::to_string(r + *n_minus_r) : "inf"; }
std::string ScanPoint::k() const { return k_minus_r ? std::to_string(r + *k_minus_r) : "inf"; }
std::string ScanPoint::l() const {
    return n_minus_r && k_minus_r ? std::to_string(*n_minus_r + *k_minus_r) : "inf";
}

namespace {

struct ProductBound {
    BigReal upper;
    BigReal tail_error;
    int terms = 0;
};

// (1 - Q)^{-1} prod_{s >= 1} (1 - Q^s)^{-3} with Q = q_upper^2, rounded up.
// The product is cut at S terms where the tail bound
// prod_{s > S} (1 - Q^s)^{-3} <= exp(3 Q^{S+1} / ((1 - Q)(1 - Q^{S+1})))
// drops below 1 + 1e-12.
ProductBound product_upper_bound(const QContext& ctx) {
    const int bits = ctx.precision_bits();
    const BigReal one(1L, bits);
    const BigReal Q = mul(ctx.q_upper(), ctx.q_upper(), Round::up);
    const BigReal one_minus_Q = sub(one, Q, Round::down);
    const BigReal tolerance = BigReal(mpq_class(mpz_class(1), mpz_class("1000000000000")), bits, Round::down);

    BigReal power = Q;  // Q^s, rounded up
    BigReal product = one;  // prod (1 - Q^s), rounded down
    int s = 1;
    BigReal tail_error(bits);
    while (true) {
        product = mul(product, sub(one, power, Round::down), Round::down);
        BigReal next = mul(power, Q, Round::up);  // Q^{s+1}
        BigReal denom = mul(one_minus_Q, sub(one, next, Round::down), Round::down);
        BigReal exponent = div(mul(BigReal(3L, bits), next, Round::up), denom, Round::up);
        tail_error = sub(exp(exponent, Round::up), one, Round::up);
        if (tail_error < tolerance || s >= 1000000) break;
        power = std::move(next);
        ++s;
    }
    BigReal cube = mul(mul(product, product, Round::down), product, Round::down);
    BigReal upper = div(add(one, tail_error, Round::up), mul(one_minus_Q, cube, Round::down), Round::up);
    return {upper, tail_error, s};
}

} // namespace

BigReal dn_upper_bound(int N, int precision_bits) {
    require_rd_dimension(N);
    return product_upper_bound(QContext(N, precision_bits)).upper;
}

RDBound dn_constant(int N, const Truncation& truncation, int precision_bits) {
    require_rd_dimension(N);
    if (truncation.r_max < 0 || truncation.side_max < 0) throw InvalidArgument("truncation limits must be non-negative");
    const QContext ctx(N, precision_bits);
    const int bits = precision_bits;
    const BigReal one(1L, bits);
    const BigReal q = div(add(ctx.q_lower(), ctx.q_upper(), Round::nearest), BigReal(2L, bits), Round::nearest);
    const BigReal Q = q * q;

    // E[t] = 1 - Q^t for t up to the largest exponent in the scan.
    const int r_max = truncation.r_max;
    const int side = truncation.side_max;
    const int t_max = 2 * side + r_max + 2;
    std::vector<BigReal> E;
    E.reserve(static_cast<std::size_t>(t_max) + 1);
    BigReal power = one;
    for (int t = 0; t <= t_max; ++t) {
        E.push_back(one - power);
        power = power * Q;
    }
    // Sides are 0..side plus "infinity", where E[.] -> 1.
    auto e_at = [&](std::optional<int> t) -> const BigReal& { return t ? E[static_cast<std::size_t>(*t)] : one; };
    auto plus = [](std::optional<int> a, int b) { return a ? std::optional<int>(*a + b) : std::nullopt; };

    std::vector<std::optional<int>> sides;
    for (int a = 0; a <= side; ++a) sides.emplace_back(a);
    sides.emplace_back(std::nullopt);

    RDBound out{N, BigReal(bits), ScanPoint{}, truncation, BigReal(bits), 0, BigReal(bits)};
    out.value = BigReal(0L, bits);
    for (const auto& a : sides)
        for (const auto& b : sides) {
            const std::optional<int> l = a && b ? std::optional<int>(*a + *b) : std::nullopt;
            BigReal norm_inv = one;
            for (int r = 0; r <= r_max; ++r) {
                if (r > 0) {
                    // Factor s = r of the product form, which depends on n - r, k - r and l only.
                    const int s = r;
                    BigReal num = E[static_cast<std::size_t>(1 + s)] * e_at(plus(a, s)) * e_at(plus(b, s));
                    BigReal den = e_at(plus(l, 1 + s)) * E[static_cast<std::size_t>(s)] * E[static_cast<std::size_t>(s)];
                    norm_inv = norm_inv * num / den;
                }
                BigReal radicand = E[1] * e_at(plus(a, r + 1)) * e_at(plus(b, r + 1)) /
                                   (E[static_cast<std::size_t>(r + 1)] * E[static_cast<std::size_t>(r + 1)] * e_at(plus(l, 1)));
                BigReal value = sqrt(radicand) * norm_inv;
                if (value > out.value) {
                    out.value = value;
                    out.argmax = ScanPoint{r, a, b};
                }
            }
        }

    auto bound = product_upper_bound(ctx);
    out.rigorous_upper = bound.upper;
    out.tail_error = bound.tail_error;
    out.product_terms = bound.terms;
    return out;
}

BigReal selector_bound(int degree, int m, const BigReal& d_star, Round rnd) {
    if (m < 1) throw InvalidArgument("selector needs m >= 1");
    if (degree < 0) throw InvalidArgument("degree must be non-negative");
    const int bits = d_star.bits();
    // exp((ln D + (3/2) ln(2 r m + 1)) / (2m)); every step is monotone
    // increasing in its inputs, so one rounding direction bounds the result.
    BigReal base(2L * degree * m + 1, bits);
    BigReal log_d = log(d_star, rnd);
    BigReal log_base = log(base, rnd);
    BigReal three_halves = div(BigReal(3L, bits), BigReal(2L, bits), rnd);
    BigReal numerator = add(log_d, mul(three_halves, log_base, rnd), rnd);
    BigReal exponent = div(numerator, BigReal(2L * m, bits), rnd);
    return exp(exponent, rnd);
}

PSelection select_p(int degree, const BigReal& epsilon, const BigReal& d_star) {
    if (!(epsilon > 0L)) throw InvalidArgument("epsilon must be positive");
    if (d_star < 1L) throw InvalidArgument("D_star must be at least 1");
    if (degree < 0) throw InvalidArgument("degree must be non-negative");
    const int bits = std::max(d_star.bits(), epsilon.bits());
    const BigReal target = add(BigReal(1L, bits), epsilon, Round::down);
    auto fits = [&](int m) { return selector_bound(degree, m, d_star, Round::up) <= target; };

    // The bound decreases in m: double until it fits, then bisect.
    constexpr int m_cap = 1 << 28;
    int hi = 1;
    while (!fits(hi)) {
        if (hi >= m_cap) throw InvalidArgument("epsilon too small: no m below 2^28 satisfies the selector bound");
        hi *= 2;
    }
    int lo = hi / 2;  // fails (or zero)
    while (hi - lo > 1) {
        int mid = lo + (hi - lo) / 2;
        if (fits(mid)) hi = mid;
        else lo = mid;
    }
    return PSelection{hi, 4 * hi, selector_bound(degree, hi, d_star, Round::up)};
}

BigReal selector_d_star(int precision_bits) {
    BigReal best = dn_upper_bound(3, precision_bits);
    for (int N = 4; N <= 10; ++N) {
        BigReal v = dn_upper_bound(N, precision_bits);
        if (v > best) best = v;
    }
    return best;
}

bool RDCheckReport::all_hold() const {
    return std::all_of(rows.begin(), rows.end(), [](const RDCheckRow& r) { return r.holds; });
}

RDCheckReport rd_check(const NCPolynomial& P, int N, const std::vector<int>& p_list, const Limits& limits,
                       int precision_bits) {
    require_rd_dimension(N);
    if (P.model() != Model::orthogonal) throw InvalidArgument("rd_check applies to O_N^+ polynomials");
    RDCheckReport report{N, P.degree(), dn_upper_bound(N, precision_bits), BigReal(precision_bits), {}};

    report.l2_norm = rational_root(lp_moment(P, 1, N, limits), 2, precision_bits, Round::down);
    BigReal growth = pow(BigReal(static_cast<long>(report.degree) + 1, precision_bits),
                         div(BigReal(3L, precision_bits), BigReal(2L, precision_bits), Round::down), Round::down);
    // The rounding of the bound is downward except for the rigorous D_N
    // upper bound, so a reported "holds" is the true inequality.
    BigReal bound = mul(mul(report.d_upper, growth, Round::down), report.l2_norm, Round::down);

    for (int p : p_list) {
        if (p < 2 || p % 2 != 0) throw InvalidArgument("L^p exponent must be an even integer >= 2");
        RDCheckRow row{p, rational_root(lp_moment(P, p / 2, N, limits), static_cast<unsigned long>(p), precision_bits, Round::up),
                       bound, BigReal(precision_bits), false};
        row.margin = sub(row.bound, row.lp_norm, Round::down);
        row.holds = row.lp_norm <= row.bound;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace freeqg
