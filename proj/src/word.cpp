#include "freeqg/word.hpp"

#include "freeqg/error.hpp"

#include <algorithm>

namespace freeqg {

std::string to_string(Model m) {
    switch (m) {
    case Model::orthogonal: return "o+";
    case Model::unitary: return "u+";
    case Model::semicircular: return "semicircular";
    case Model::circular: return "circular";
    }
    return "?";
}

ColorPattern color_pattern(const Word& w) {
    ColorPattern out;
    out.reserve(w.size());
    for (const auto& l : w) out.push_back(l.color);
    return out;
}

std::string to_string(const ColorPattern& pattern) {
    std::string out;
    for (auto c : pattern) out += c == Color::plain ? '1' : '*';
    return out;
}

ColorPattern parse_color_pattern(const std::string& text) {
    ColorPattern out;
    for (char ch : text) {
        if (ch == '1') out.push_back(Color::plain);
        else if (ch == '*') out.push_back(Color::star);
        else if (ch == ',' || ch == ' ') continue;
        else throw ParseError("color pattern may only contain '1' and '*': " + text);
    }
    return out;
}

std::string to_string(const Word& w, Model m) {
    if (w.empty()) return "1";
    const bool colored = has_colors(m);
    const char* name = colored ? "v" : "x";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += '*';
        out += name;
        if (colored && w[i].color == Color::star) out += '*';
        out += '[' + std::to_string(w[i].row) + ',' + std::to_string(w[i].col) + ']';
    }
    return out;
}

Word adjoint(const Word& w, Model m) {
    Word out(w.rbegin(), w.rend());
    if (has_colors(m))
        for (auto& l : out) l.color = flip(l.color);
    return out;
}

} // namespace freeqg
