#pragma once

#include "freeqg/big_real.hpp"
#include "freeqg/weingarten.hpp"
#include "freeqg/word.hpp"

#include <gmpxx.h>

#include <compare>
#include <map>
#include <optional>
#include <string>

namespace freeqg {

/// Exact complex rational re + im i.
struct GaussRational {
    mpq_class re = 0;
    mpq_class im = 0;

    GaussRational() = default;
    GaussRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
    GaussRational(long r) : re(r), im(0) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussRational conj() const { return {re, -im}; }

    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }

    /// "p/q" for reals, otherwise "a+bi" with rational parts.
    std::string to_string() const;
};

/// A word with an explicit power of sqrt(N) in front of it.
struct Monomial {
    Word word;
    int sqrt_n_power = 0;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Formal *-polynomial in generator letters. Terms are kept in canonical
/// (word, sqrt-power) order with no zero coefficients.
class NCPolynomial {
public:
    using Terms = std::map<Monomial, GaussRational>;

    explicit NCPolynomial(Model model = Model::orthogonal) : model_(model) {}

    static NCPolynomial constant(Model model, const GaussRational& c);
    static NCPolynomial unit(Model model) { return constant(model, 1); }
    static NCPolynomial letter(Model model, std::uint32_t row, std::uint32_t col, Color color = Color::plain);

    Model model() const { return model_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Longest word length; 0 for the zero polynomial.
    int degree() const;

    void add_term(const Monomial& m, const GaussRational& c);

    NCPolynomial& operator+=(const NCPolynomial& o);
    NCPolynomial& operator-=(const NCPolynomial& o);
    NCPolynomial& operator*=(const GaussRational& c);

    friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
    friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
    friend NCPolynomial operator*(NCPolynomial a, const GaussRational& c) { return a *= c; }
    friend NCPolynomial operator*(const GaussRational& c, NCPolynomial a) { return a *= c; }
    friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
    friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) {
        return a.model_ == b.model_ && a.terms_ == b.terms_;
    }

    /// Same terms, reinterpreted in another model (e.g. its large-N limit).
    NCPolynomial with_model(Model model) const;

    /// Parseable text form; sqrt(N) powers are written as a "sqrtN^e*" prefix.
    std::string to_string() const;

private:
    Model model_;
    Terms terms_;
};

/// Bilinear concatenation product; throws InvalidArgument on model mismatch.
NCPolynomial poly_mul(const NCPolynomial& a, const NCPolynomial& b);

/// Reverse words, flip colors in colored models, conjugate coefficients.
NCPolynomial poly_adjoint(const NCPolynomial& a);

/// a^e with a^0 = 1.
NCPolynomial poly_pow(const NCPolynomial& a, int e);

/// P(S_N): X_ij -> sqrt(N) u_ij for i, j <= N and 0 otherwise.
NCPolynomial scaled_generators(const NCPolynomial& p, int N);

/// Linear extension of the Haar state (finite models, N required) or of the
/// free (semi)circular state (limit models, N ignored). Throws Error if a
/// term would contribute an odd power of sqrt(N).
GaussRational state_eval(const NCPolynomial& a, std::optional<int> N, const Limits& limits = {},
                         TableCache* cache = nullptr);

/// Exact h((a* a)^m).
mpq_class lp_moment(const NCPolynomial& a, int m, std::optional<int> N, const Limits& limits = {},
                    TableCache* cache = nullptr);

/// ||a||_p = h((a* a)^{p/2})^{1/p} for even p >= 2. Throws ResourceError when
/// the words of (a* a)^{p/2} are longer than the limits allow.
BigReal lp_norm(const NCPolynomial& a, int p, std::optional<int> N, int precision_bits = BigReal::default_bits,
                const Limits& limits = {}, TableCache* cache = nullptr);

/// Longest word length any finite-model evaluation may use under `limits`.
int max_word_length(const Limits& limits);

} // namespace freeqg
