#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace freeqg {

/// The two colors of a generator: the letter itself (1) or its adjoint (*).
enum class Color : std::uint8_t { plain, star };

constexpr Color flip(Color c) { return c == Color::plain ? Color::star : Color::plain; }

/// Which state a polynomial or word is evaluated in. The finite models are
/// the Haar states of O_N^+ and U_N^+; semicircular and circular are their
/// large-N limits.
enum class Model : std::uint8_t { orthogonal, unitary, semicircular, circular };

constexpr bool is_finite(Model m) { return m == Model::orthogonal || m == Model::unitary; }

/// orthogonal -> semicircular, unitary -> circular; limits map to themselves.
constexpr Model limit_of(Model m) {
    switch (m) {
    case Model::orthogonal: return Model::semicircular;
    case Model::unitary: return Model::circular;
    default: return m;
    }
}

/// True when adjoints flip letter colors (v_ij* != v_ij).
constexpr bool has_colors(Model m) { return m == Model::unitary || m == Model::circular; }

std::string to_string(Model m);

/// One generator u_ij, v_ij or v_ij^*, indices 1-based.
struct Letter {
    std::uint32_t row = 1;
    std::uint32_t col = 1;
    Color color = Color::plain;

    friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Color sequence of a word, e.g. "1*1*".
using ColorPattern = std::vector<Color>;

ColorPattern color_pattern(const Word& w);
std::string to_string(const ColorPattern& pattern);
/// Parses a string over {'1', '*'}; throws ParseError on anything else.
ColorPattern parse_color_pattern(const std::string& text);

/// Text form using the letter name of the model: x[1,2]*v*[2,1]...
std::string to_string(const Word& w, Model m);

/// Reverse the word; colors flip only in colored models.
Word adjoint(const Word& w, Model m);

} // namespace freeqg
