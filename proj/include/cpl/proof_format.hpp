#pragma once

#include <string>
#include <string_view>

#include "cpl/proof.hpp"

namespace cpl {

// Proof files are JSON. Every node is an object with exactly these keys:
//
//   "rule"        rule name, e.g. "Ax1", "R~>C", "R<~inter", "R~>mu*"
//   "conclusion"  "|- <bool> ~> <formula>" or "|- <bool> <~ <formula>"
//   "witnesses"   object mapping witness names ("c", "d") to Boolean formulas
//   "hypotheses"  array of "<bool> |= <bool>" or "mu(<bool>) <rel> <rational>",
//                 rel one of >=, >, <=, <, =
//   "premises"    array of nodes
//
// Boolean formulas use x<i> variables. write_proof emits keys in sorted order with
// two-space indentation and a trailing newline; read_proof(write_proof(t)) == t and
// write_proof(read_proof(s)) == s for every s produced by write_proof.

LabelledFormula parse_labelled(std::string_view text);
std::string print_labelled(const LabelledFormula& l);

Hypothesis parse_hypothesis(std::string_view text);
std::string print_hypothesis(const Hypothesis& h);

/// Throws ParseError with a JSON-pointer-like location in the message.
DerivationTree read_proof(std::string_view text);
std::string write_proof(const DerivationTree& t);

} // namespace cpl
