#pragma once

#include "bdi/formula.hpp"

namespace bdi {

/// PROB(f | g) cmp a  ==>  PROB(f & g) - a*PROB(g) cmp 0.
/// A coefficient c on the conditional term carries over as c*PROB(f & g).
/// Constraints without a conditional term are returned unchanged; a
/// conditional term inside a multi-term combination throws UnsupportedError.
state::Prob rewrite_conditional(const state::Prob& c);

/// Rewrites into the evaluator core: INEVITABLE(p) -> ~OPTIONAL(~p),
/// a -> b -> ~a | b, conditional PROB eliminated, and <=, <, = rewritten
/// through >= and > by negating coefficients and bound. Idempotent.
StateFormula desugar(const StateFormula& f);
PathFormula desugar(const PathFormula& p);

}  // namespace bdi
