#pragma once

// Concrete ASCII syntax:
//
//   ~ & | ->            negation, conjunction, disjunction, implication
//   <> []               eventually, always (path formulas)
//   BEL(f) GOAL(f) INTEND(f) INTEND[maximin](f) INTEND[maxexpval](f)
//   OPTIONAL(p) INEVITABLE(p)
//   done(e)             e ::= Name | e ; e | ?f | (e)
//   c1*PROB(f) + c2*PROB(g | h) ... CMP bound
//   [c*]PAYOFF(p) CMP bound
//   CMP ::= >= | > | <= | < | =
//
// Precedence from tightest: unary, &, |, ->. & and | associate left, ->
// associates right. Inside PROB(...) a top-level `|` is the conditioning
// bar; disjunctions there need parentheses.

#include <string_view>

#include "bdi/formula.hpp"

namespace bdi {

/// Throws ParseError (with line/column) on syntax errors and on path-only
/// constructs such as a bare done(e) in a state position.
StateFormula parse_state_formula(std::string_view text);
PathFormula parse_path_formula(std::string_view text);
EventExpr parse_event(std::string_view text);

/// [A-Za-z][A-Za-z0-9_]* and not a keyword.
bool is_identifier(std::string_view name);

}  // namespace bdi
