#pragma once

#include <optional>
#include <utility>

#include "bdi/formula.hpp"
#include "bdi/interpretation.hpp"

namespace bdi {

// Model checking over a finite Interpretation.
//
// All entry points take desugared (core) formulas and throw ModelError
// otherwise; use desugar() first, or check() which does it for you.
// Eventually is reflexive: <>p holds on a path when p holds at some suffix,
// the path itself included. done(?f) consumes no arc.

bool holds_state(const Interpretation& m, const Situation& s, const StateFormula& f);
bool holds_path(const Interpretation& m, const Fullpath& p, const PathFormula& f);

/// Desugars `f` and evaluates it at `s`.
bool check(const Interpretation& m, const Situation& s, const StateFormula& f);

/// mu_s of the belief-accessible worlds where `f` holds at s.time.
double prob_measure(const Interpretation& m, const Situation& s, const StateFormula& f);

struct PayoffRange {
  double min;
  double max;
};

/// Range of leaf payoffs over fullpaths from s.time in goal-accessible
/// worlds that satisfy `f` and carry a payoff. nullopt when no such path
/// exists, which makes every PAYOFF constraint on `f` vacuously true.
std::optional<PayoffRange> payoff_range(const Interpretation& m, const Situation& s,
                                        const PathFormula& f);

}  // namespace bdi
