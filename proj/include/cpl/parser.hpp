#pragma once

#include <string_view>

#include "cpl/formula.hpp"

namespace cpl {

/// Parses the counting-formula syntax:
///
///     formula := disj
///     disj    := conj ("|" conj)*
///     conj    := unary ("&" unary)*
///     unary   := "!" unary | atom | "T" | "F" | quant | "(" formula ")"
///     quant   := ("C" | "D" | "WC" | "WD") "{" rational "}" "(" formula ")"
///     atom    := integer >= 1
///     rational:= integer | integer "/" positive-integer
///
/// Binary operators associate to the left. Throws ParseError carrying the byte
/// offset and the set of tokens that would have been accepted there.
Formula parse_formula(std::string_view text);

/// Same grammar without quantifiers; variables are written x<i>.
BooleanFormula parse_boolean(std::string_view text);

} // namespace cpl
