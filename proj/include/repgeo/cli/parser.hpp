#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "repgeo/errors.hpp"
#include "repgeo/free_module.hpp"

namespace repgeo::cli {

/// Syntax or typing error in an expression; position is a 0-based byte offset.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Grammar (ASCII):
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := unary (('*' | 'o' | '/') unary)*
///   unary  := '-' unary | power
///   power  := atom ['^' ['-'] integer]
///   atom   := integer | 'x'<k> | 'y'<k> | '(' expr ')'
/// `o` is the right action and binds like `*`. Division is by integer
/// literals only. Negative exponents apply to monomials only.
GroupRingElement parse_ring_expr(std::string_view text, Field field);
FreeModuleElement parse_module_expr(std::string_view text, Field field);
/// A single monomial with coefficient 1, e.g. `y1*y2^-1` or `1`.
Word parse_word(std::string_view text);

}  // namespace repgeo::cli
