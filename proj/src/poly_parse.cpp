#include "freeqg/poly_parse.hpp"

#include "freeqg/error.hpp"

#include <cctype>
#include <string>

namespace freeqg {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NCPolynomial parse(std::optional<Model> default_model) {
        skip_space();
        if (at_end()) fail("empty polynomial");
        struct Term {
            GaussRational coef;
            Word word;
        };
        std::vector<Term> terms;
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = get() == '-';
            skip_space();
        }
        while (true) {
            auto term = parse_term();
            if (negative) term.first = -term.first;
            terms.push_back({std::move(term.first), std::move(term.second)});
            skip_space();
            if (at_end()) break;
            char c = get();
            if (c != '+' && c != '-') fail(std::string("expected '+' or '-' but found '") + c + "'", pos_ - 1);
            negative = c == '-';
            skip_space();
        }
        Model model = letter_model_.value_or(default_model.value_or(Model::orthogonal));
        NCPolynomial out(model);
        for (auto& t : terms) out.add_term(Monomial{std::move(t.word), 0}, t.coef);
        return out;
    }

private:
    std::pair<GaussRational, Word> parse_term() {
        GaussRational coef(1);
        Word word;
        while (true) {
            skip_space();
            if (at_end()) fail("expected a factor");
            char c = peek();
            if (c == 'x' || c == 'v') {
                auto [letter, power] = parse_letter();
                for (int e = 0; e < power; ++e) word.push_back(letter);
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == 'i') {
                coef *= parse_coefficient();
            } else {
                fail(std::string("unexpected character '") + c + "'");
            }
            skip_space();
            if (!at_end() && peek() == '*') {
                ++pos_;
                continue;
            }
            return {coef, word};
        }
    }

    GaussRational parse_coefficient() {
        if (peek() == 'i') {
            ++pos_;
            return GaussRational(0, 1);
        }
        mpq_class value(parse_integer_text());
        if (!at_end() && peek() == '/') {
            ++pos_;
            mpz_class den(parse_integer_text());
            if (sgn(den) == 0) fail("zero denominator", pos_ - 1);
            value /= den;
        }
        value.canonicalize();
        if (!at_end() && peek() == 'i') {
            ++pos_;
            return GaussRational(0, value);
        }
        return GaussRational(value);
    }

    std::pair<Letter, int> parse_letter() {
        const std::size_t start = pos_;
        const char name = get();
        Letter letter;
        const Model model = name == 'x' ? Model::orthogonal : Model::unitary;
        if (name == 'v' && !at_end() && peek() == '*') {
            // "v*[" is a starred letter; "v * ..." would be a product with no indices.
            ++pos_;
            letter.color = Color::star;
        }
        if (letter_model_ && *letter_model_ != model) fail("cannot mix x and v letters", start);
        letter_model_ = model;
        expect('[');
        letter.row = parse_index();
        expect(',');
        letter.col = parse_index();
        expect(']');
        int power = 1;
        skip_space();
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip_space();
            auto digits = parse_integer_text();
            if (digits.size() > 3) fail("exponent too large");
            power = std::stoi(digits);
        }
        return {letter, power};
    }

    std::uint32_t parse_index() {
        skip_space();
        const std::size_t start = pos_;
        auto digits = parse_integer_text();
        if (digits.size() > 9) fail("index too large", start);
        auto v = std::stoul(digits);
        if (v == 0) fail("indices are 1-based", start);
        skip_space();
        return static_cast<std::uint32_t>(v);
    }

    std::string parse_integer_text() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected a number");
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect(char c) {
        skip_space();
        if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char get() { return text_[pos_++]; }

    [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
    [[noreturn]] void fail(const std::string& what, std::size_t at) const {
        throw ParseError("polynomial parse error at column " + std::to_string(at + 1) + ": " + what + " in \"" +
                         std::string(text_) + "\"");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::optional<Model> letter_model_;
};

} // namespace

NCPolynomial parse_polynomial(std::string_view text, std::optional<Model> default_model) {
    return Parser(text).parse(default_model);
}

} // namespace freeqg
