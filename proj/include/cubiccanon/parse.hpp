#ifndef CUBICCANON_PARSE_HPP
#define CUBICCANON_PARSE_HPP

#include <string_view>

#include "cubiccanon/errors.hpp"
#include "cubiccanon/poly2.hpp"

namespace cubiccanon {

/// Parse an expression over x, y into a fully expanded Poly2.
///
/// expression := ('+'|'-')? term (('+'|'-') term)*
/// term       := factor ('*' factor)*
/// factor     := number | variable ('^' uint)? | '(' expression ')'
///
/// '*' is mandatory ("3x" is rejected), input must be ASCII, exponents
/// are capped at 64. Throws ParseError with a 0-based offset.
Poly2 parse_poly(std::string_view text);

/// Parse "p ; q" into a SubstitutionMap.
SubstitutionMap parse_map(std::string_view text);

}  // namespace cubiccanon

#endif
