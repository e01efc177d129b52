#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>

namespace freeqg {

/// Rounding direction for a single MPFR operation.
enum class Round { nearest, down, up };

/// Owning wrapper around an MPFR number. Arithmetic operators round to
/// nearest; the free functions taking a `Round` give directed results for
/// one-sided bounds.
class BigReal {
public:
    static constexpr int default_bits = 128;

    explicit BigReal(int bits = default_bits);
    BigReal(long value, int bits);
    BigReal(const mpz_class& value, int bits, Round rnd = Round::nearest);
    BigReal(const mpq_class& value, int bits, Round rnd = Round::nearest);
    BigReal(const BigReal& other);
    BigReal(BigReal&& other) noexcept;
    BigReal& operator=(const BigReal& other);
    BigReal& operator=(BigReal&& other) noexcept;
    ~BigReal();

    int bits() const { return static_cast<int>(mpfr_get_prec(value_)); }
    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }

    /// Scientific notation with `digits` significant decimal digits.
    std::string to_string(int digits = 30) const;

    friend BigReal operator+(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a);

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
    friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
    friend std::partial_ordering operator<=>(const BigReal& a, long b);

private:
    mpfr_t value_;
};

mpfr_rnd_t to_mpfr(Round rnd);

BigReal add(const BigReal& a, const BigReal& b, Round rnd);
BigReal sub(const BigReal& a, const BigReal& b, Round rnd);
BigReal mul(const BigReal& a, const BigReal& b, Round rnd);
BigReal div(const BigReal& a, const BigReal& b, Round rnd);
BigReal sqrt(const BigReal& a, Round rnd = Round::nearest);
BigReal log(const BigReal& a, Round rnd = Round::nearest);
BigReal exp(const BigReal& a, Round rnd = Round::nearest);
BigReal pow(const BigReal& a, const BigReal& b, Round rnd = Round::nearest);
BigReal pow(const BigReal& a, long exponent, Round rnd = Round::nearest);
BigReal abs(const BigReal& a);

/// Real `root`-th root of a non-negative rational; directed modes give one-sided bounds.
BigReal rational_root(const mpq_class& value, unsigned long root, int bits, Round rnd = Round::nearest);

/// Closed real interval [lower, upper].
struct Bracket {
    BigReal lower;
    BigReal upper;

    BigReal width() const { return sub(upper, lower, Round::up); }
    bool contains(const BigReal& x) const { return lower <= x && x <= upper; }
};

} // namespace freeqg
