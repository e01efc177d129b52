#include "freeqg/big_real.hpp"

#include <stdexcept>
#include <vector>

namespace freeqg {

mpfr_rnd_t to_mpfr(Round rnd) {
    switch (rnd) {
    case Round::down: return MPFR_RNDD;
    case Round::up: return MPFR_RNDU;
    case Round::nearest: break;
    }
    return MPFR_RNDN;
}

BigReal::BigReal(int bits) {
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

BigReal::BigReal(long value, int bits) {
    mpfr_init2(value_, bits);
    mpfr_set_si(value_, value, MPFR_RNDN);
}

BigReal::BigReal(const mpz_class& value, int bits, Round rnd) {
    mpfr_init2(value_, bits);
    mpfr_set_z(value_, value.get_mpz_t(), to_mpfr(rnd));
}

BigReal::BigReal(const mpq_class& value, int bits, Round rnd) {
    mpfr_init2(value_, bits);
    mpfr_set_q(value_, value.get_mpq_t(), to_mpfr(rnd));
}

BigReal::BigReal(const BigReal& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

std::string BigReal::to_string(int digits) const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    int len = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, value_);
    std::vector<char> buf(static_cast<std::size_t>(len) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, value_);
    return std::string(buf.data(), static_cast<std::size_t>(len));
}

namespace {

int max_bits(const BigReal& a, const BigReal& b) { return a.bits() > b.bits() ? a.bits() : b.bits(); }

} // namespace

BigReal add(const BigReal& a, const BigReal& b, Round rnd) {
    BigReal r(max_bits(a, b));
    mpfr_add(r.get(), a.get(), b.get(), to_mpfr(rnd));
    return r;
}

BigReal sub(const BigReal& a, const BigReal& b, Round rnd) {
    BigReal r(max_bits(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), to_mpfr(rnd));
    return r;
}

BigReal mul(const BigReal& a, const BigReal& b, Round rnd) {
    BigReal r(max_bits(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), to_mpfr(rnd));
    return r;
}

BigReal div(const BigReal& a, const BigReal& b, Round rnd) {
    BigReal r(max_bits(a, b));
    mpfr_div(r.get(), a.get(), b.get(), to_mpfr(rnd));
    return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) { return add(a, b, Round::nearest); }
BigReal operator-(const BigReal& a, const BigReal& b) { return sub(a, b, Round::nearest); }
BigReal operator*(const BigReal& a, const BigReal& b) { return mul(a, b, Round::nearest); }
BigReal operator/(const BigReal& a, const BigReal& b) { return div(a, b, Round::nearest); }

BigReal operator-(const BigReal& a) {
    BigReal r(a.bits());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.value_, b.value_);
    return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const BigReal& a, long b) {
    if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp_si(a.value_, b);
    return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

BigReal sqrt(const BigReal& a, Round rnd) {
    BigReal r(a.bits());
    mpfr_sqrt(r.get(), a.get(), to_mpfr(rnd));
    return r;
}

BigReal log(const BigReal& a, Round rnd) {
    BigReal r(a.bits());
    mpfr_log(r.get(), a.get(), to_mpfr(rnd));
    return r;
}

BigReal exp(const BigReal& a, Round rnd) {
    BigReal r(a.bits());
    mpfr_exp(r.get(), a.get(), to_mpfr(rnd));
    return r;
}

BigReal pow(const BigReal& a, const BigReal& b, Round rnd) {
    BigReal r(max_bits(a, b));
    mpfr_pow(r.get(), a.get(), b.get(), to_mpfr(rnd));
    return r;
}

BigReal pow(const BigReal& a, long exponent, Round rnd) {
    BigReal r(a.bits());
    mpfr_pow_si(r.get(), a.get(), exponent, to_mpfr(rnd));
    return r;
}

BigReal abs(const BigReal& a) {
    BigReal r(a.bits());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}

BigReal rational_root(const mpq_class& value, unsigned long root, int bits, Round rnd) {
    if (sgn(value) < 0) throw std::domain_error("rational_root: negative radicand");
    if (root == 0) throw std::domain_error("rational_root: zeroth root");
    // Evaluate with guard bits, then round once into the target precision.
    BigReal wide(value, bits + 64, rnd);
    BigReal rooted(bits + 64);
    mpfr_rootn_ui(rooted.get(), wide.get(), root, to_mpfr(rnd));
    BigReal r(bits);
    mpfr_set(r.get(), rooted.get(), to_mpfr(rnd));
    return r;
}

} // namespace freeqg
