#pragma once

#include "freeqg/ncpoly.hpp"

#include <optional>
#include <string_view>

namespace freeqg {

/// Parses the text form of a polynomial:
///
///     poly   := ['+'|'-'] term (('+'|'-') term)*
///     term   := factor ('*' factor)*
///     factor := coeff | letter ['^' int]
///     coeff  := int ['/' int] ['i'] | 'i'
///     letter := 'x[' int ',' int ']' | 'v[' int ',' int ']' | 'v*[' int ',' int ']'
///
/// `x` letters give an O_N^+ polynomial and `v` letters a U_N^+ one; mixing
/// them is an error. A polynomial without letters takes `default_model`.
/// Throws ParseError with the offending column on malformed input.
NCPolynomial parse_polynomial(std::string_view text, std::optional<Model> default_model = std::nullopt);

} // namespace freeqg
