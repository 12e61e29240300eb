#include "fuzz.hpp"

namespace bdi::testing {

FormulaFuzzer::FormulaFuzzer(std::uint64_t seed, Vocabulary vocabulary)
    : rng_(seed), v_(std::move(vocabulary)) {}

int FormulaFuzzer::pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

bool FormulaFuzzer::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

double FormulaFuzzer::coefficient() {
  static const double values[] = {1, 1, 1, 2, 0.5, -1, -0.25, 3, 0.1};
  return values[pick(std::size(values))];
}

double FormulaFuzzer::bound() {
  static const double values[] = {0, 0.42, 0.5, 1, -0.3, 200, 150, 0.25};
  return values[pick(std::size(values))];
}

Comparator FormulaFuzzer::comparator() {
  if (!v_.sugar) return coin(0.5) ? Comparator::Ge : Comparator::Gt;
  static const Comparator values[] = {Comparator::Ge, Comparator::Gt, Comparator::Le,
                                      Comparator::Lt, Comparator::Eq};
  return values[pick(5)];
}

StateFormula FormulaFuzzer::state(int depth) {
  if (depth <= 1) {
    if (coin(0.1)) return constant(coin(0.5));
    return prop(v_.props[pick(v_.props.size())]);
  }
  const int d = depth - 1;
  for (;;) {
    switch (pick(12)) {
      case 0: return prop(v_.props[pick(v_.props.size())]);
      case 1: return neg(state(d));
      case 2: return conj(state(d), state(d));
      case 3: return disj(state(d), state(d));
      case 4:
        if (!v_.sugar) break;
        return implies(state(d), state(d));
      case 5: {
        if (!v_.modal) break;
        int which = pick(3);
        if (which == 0) return bel(state(d));
        if (which == 1) return goal(state(d));
        std::optional<Procedure> tag;
        if (v_.intend_tags && coin(0.6))
          tag = coin(0.5) ? Procedure::Maximin : Procedure::MaxExpVal;
        return intend(state(d), tag);
      }
      case 6:
      case 7: return optional(path(d));
      case 8:
        if (!v_.sugar) break;
        return inevitable(path(d));
      case 9: {
        if (!v_.prob) break;
        if (v_.sugar && coin(0.3))
          return prob({{coefficient(), state(d), state(d)}}, comparator(), bound());
        std::vector<state::ProbTerm> terms;
        int n = 1 + pick(3);
        for (int i = 0; i < n; ++i) terms.push_back({coefficient(), state(d), {}});
        return prob(std::move(terms), comparator(), bound());
      }
      case 10:
        if (!v_.payoff) break;
        return payoff(path(d), comparator(), bound(), coefficient());
      case 11: return constant(coin(0.5));
    }
  }
}

PathFormula FormulaFuzzer::path(int depth) {
  if (depth <= 1) return as_path(prop(v_.props[pick(v_.props.size())]));
  const int d = depth - 1;
  for (;;) {
    switch (pick(9)) {
      case 0: return as_path(state(d));
      case 1:
      case 2: return done(event(d));
      case 3: return neg(path(d));
      case 4: return conj(path(d), path(d));
      case 5: return disj(path(d), path(d));
      case 6:
        if (!v_.sugar) break;
        return implies(path(d), path(d));
      case 7: return eventually(path(d));
      case 8:
        if (!v_.sugar || depth < 4) break;
        return always(path(depth - 3));
    }
  }
}

EventExpr FormulaFuzzer::event(int depth) {
  if (depth <= 1) return primitive(v_.events[pick(v_.events.size())]);
  const int d = depth - 1;
  switch (pick(4)) {
    case 0: return primitive(v_.events[pick(v_.events.size())]);
    case 1:
    case 2: return sequence(event(d), event(d));
    default: return test(state(d));
  }
}

}  // namespace bdi::testing
