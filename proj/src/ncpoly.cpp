#include "freeqg/ncpoly.hpp"

#include "freeqg/error.hpp"
#include "freeqg/freelimit.hpp"
#include "freeqg/pairings.hpp"

#include <algorithm>

namespace freeqg {

GaussRational& GaussRational::operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string GaussRational::to_string() const {
    if (is_real()) return re.get_str();
    std::string out;
    if (sgn(re) != 0) out = re.get_str() + (sgn(im) > 0 ? "+" : "");
    if (im == 1) return out + "i";
    if (im == -1) return out + "-i";
    return out + im.get_str() + "i";
}

NCPolynomial NCPolynomial::constant(Model model, const GaussRational& c) {
    NCPolynomial p(model);
    p.add_term(Monomial{}, c);
    return p;
}

NCPolynomial NCPolynomial::letter(Model model, std::uint32_t row, std::uint32_t col, Color color) {
    if (row < 1 || col < 1) throw InvalidArgument("generator indices are 1-based");
    if (!has_colors(model) && color != Color::plain) throw InvalidArgument("self-adjoint model has no starred letters");
    NCPolynomial p(model);
    p.add_term(Monomial{Word{Letter{row, col, color}}, 0}, 1);
    return p;
}

int NCPolynomial::degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.word.size());
    return static_cast<int>(d);
}

void NCPolynomial::add_term(const Monomial& m, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

namespace {

void require_same_model(const NCPolynomial& a, const NCPolynomial& b) {
    if (a.model() != b.model())
        throw InvalidArgument("polynomial model mismatch: " + to_string(a.model()) + " vs " + to_string(b.model()));
}

} // namespace

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
    require_same_model(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
    require_same_model(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

NCPolynomial& NCPolynomial::operator*=(const GaussRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) { return poly_mul(a, b); }

NCPolynomial NCPolynomial::with_model(Model model) const {
    NCPolynomial out(model);
    for (const auto& [m, c] : terms_) {
        if (!has_colors(model))
            for (const auto& l : m.word)
                if (l.color != Color::plain) throw InvalidArgument("starred letter in a self-adjoint model");
        out.terms_.emplace(m, c);
    }
    return out;
}

std::string NCPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string coef;
        bool negative = false;
        if (c.is_real()) {
            negative = sgn(c.re) < 0;
            mpq_class mag = abs(c.re);
            if (mag != 1 || (m.word.empty() && m.sqrt_n_power == 0)) coef = mag.get_str();
        } else if (sgn(c.re) == 0) {
            negative = sgn(c.im) < 0;
            mpq_class mag = abs(c.im);
            coef = mag == 1 ? "i" : mag.get_str() + "i";
        } else {
            coef = "(" + c.to_string() + ")";
        }
        out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
        first = false;
        std::string body;
        auto append = [&](const std::string& part) {
            if (!body.empty()) body += '*';
            body += part;
        };
        if (!coef.empty()) append(coef);
        if (m.sqrt_n_power != 0) append("sqrtN^" + std::to_string(m.sqrt_n_power));
        if (!m.word.empty()) append(freeqg::to_string(m.word, model_));
        out += body;
    }
    return out;
}

NCPolynomial poly_mul(const NCPolynomial& a, const NCPolynomial& b) {
    require_same_model(a, b);
    NCPolynomial out(a.model());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Monomial m;
            m.word.reserve(ma.word.size() + mb.word.size());
            m.word = ma.word;
            m.word.insert(m.word.end(), mb.word.begin(), mb.word.end());
            m.sqrt_n_power = ma.sqrt_n_power + mb.sqrt_n_power;
            out.add_term(m, ca * cb);
        }
    return out;
}

NCPolynomial poly_adjoint(const NCPolynomial& a) {
    NCPolynomial out(a.model());
    for (const auto& [m, c] : a.terms()) out.add_term(Monomial{adjoint(m.word, a.model()), m.sqrt_n_power}, c.conj());
    return out;
}

NCPolynomial poly_pow(const NCPolynomial& a, int e) {
    if (e < 0) throw InvalidArgument("negative polynomial power");
    NCPolynomial result = NCPolynomial::unit(a.model());
    NCPolynomial base = a;
    while (e > 0) {
        if (e & 1) result = poly_mul(result, base);
        e >>= 1;
        if (e > 0) base = poly_mul(base, base);
    }
    return result;
}

NCPolynomial scaled_generators(const NCPolynomial& p, int N) {
    if (N < 1) throw InvalidArgument("invalid dimension N=" + std::to_string(N));
    NCPolynomial out(p.model());
    const auto limit = static_cast<std::uint32_t>(N);
    for (const auto& [m, c] : p.terms()) {
        bool vanishes = std::any_of(m.word.begin(), m.word.end(),
                                    [&](const Letter& l) { return l.row > limit || l.col > limit; });
        if (vanishes) continue;
        out.add_term(Monomial{m.word, m.sqrt_n_power + static_cast<int>(m.word.size())}, c);
    }
    return out;
}

int max_word_length(const Limits& limits) { return std::max(limits.k_max, limits.solve_k_max); }

GaussRational state_eval(const NCPolynomial& a, std::optional<int> N, const Limits& limits, TableCache* cache) {
    GaussRational total;
    if (is_finite(a.model())) {
        if (!N) throw InvalidArgument("finite-N state needs a dimension");
        MomentEvaluator moment(a.model(), *N, limits, cache);
        for (const auto& [m, c] : a.terms()) {
            mpq_class h = moment(m.word);
            if (sgn(h) == 0) continue;
            if (m.sqrt_n_power < 0) throw InvalidArgument("negative power of sqrt(N)");
            if (m.sqrt_n_power % 2 != 0) throw Error("state value has an irrational sqrt(N) factor");
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(*N), static_cast<unsigned long>(m.sqrt_n_power / 2));
            total += c * GaussRational(h * scale);
        }
    } else {
        for (const auto& [m, c] : a.terms()) {
            if (m.sqrt_n_power != 0) throw InvalidArgument("limit-model polynomials carry no sqrt(N) factors");
            mpz_class count = limit_moment(m.word, a.model());
            if (sgn(count) != 0) total += c * GaussRational(mpq_class(count));
        }
    }
    return total;
}

mpq_class lp_moment(const NCPolynomial& a, int m, std::optional<int> N, const Limits& limits, TableCache* cache) {
    if (m < 1) throw InvalidArgument("L^p exponent must be an even integer >= 2");
    const int length = 2 * m * a.degree();
    if (is_finite(a.model()) && length > max_word_length(limits)) {
        auto size = static_cast<std::size_t>(catalan(length / 2).get_ui());
        throw ResourceError(length, N.value_or(0), size, max_word_length(limits));
    }
    auto square = poly_mul(poly_adjoint(a), a);
    auto value = state_eval(poly_pow(square, m), N, limits, cache);
    if (!value.is_real() || sgn(value.re) < 0)
        throw Error("state of (a* a)^m is not a non-negative real: " + value.to_string());
    return value.re;
}

BigReal lp_norm(const NCPolynomial& a, int p, std::optional<int> N, int precision_bits, const Limits& limits,
                TableCache* cache) {
    if (p < 2 || p % 2 != 0) throw InvalidArgument("L^p exponent must be an even integer >= 2, got " + std::to_string(p));
    mpq_class moment = lp_moment(a, p / 2, N, limits, cache);
    return rational_root(moment, static_cast<unsigned long>(p), precision_bits);
}

} // namespace freeqg
