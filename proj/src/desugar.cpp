#include "bdi/desugar.hpp"

#include "overloaded.hpp"

namespace bdi {

using detail::Overloaded;

state::Prob rewrite_conditional(const state::Prob& c) {
  std::size_t conditional = 0;
  for (const auto& t : c.terms)
    if (t.condition) ++conditional;
  if (conditional == 0) return c;
  if (c.terms.size() != 1)
    throw UnsupportedError("conditional PROB terms cannot appear in a linear combination");

  const auto& term = c.terms.front();
  state::Prob out;
  out.terms.push_back({term.coefficient, conj(term.formula, term.condition), {}});
  out.terms.push_back({-c.bound, term.condition, {}});
  out.cmp = c.cmp;
  out.bound = 0.0;
  return out;
}

namespace {

EventExpr desugar_event(const EventExpr& e) {
  return std::visit(Overloaded{
                        [&](const event::Primitive&) { return e; },
                        [](const event::Sequence& s) {
                          return sequence(desugar_event(s.first), desugar_event(s.second));
                        },
                        [](const event::Test& t) { return test(desugar(t.formula)); },
                    },
                    e->node);
}

std::vector<state::ProbTerm> negated(std::vector<state::ProbTerm> terms) {
  for (auto& t : terms) t.coefficient = -t.coefficient;
  return terms;
}

StateFormula desugar_prob(const state::Prob& original) {
  state::Prob c = rewrite_conditional(original);
  for (auto& t : c.terms) t.formula = desugar(t.formula);
  switch (c.cmp) {
    case Comparator::Ge:
    case Comparator::Gt: return prob(c.terms, c.cmp, c.bound);
    case Comparator::Le: return prob(negated(c.terms), Comparator::Ge, -c.bound);
    case Comparator::Lt: return prob(negated(c.terms), Comparator::Gt, -c.bound);
    case Comparator::Eq:
      return conj(prob(c.terms, Comparator::Ge, c.bound),
                  prob(negated(c.terms), Comparator::Ge, -c.bound));
  }
  return prob(c.terms, c.cmp, c.bound);
}

StateFormula desugar_payoff(const state::Payoff& c) {
  auto body = desugar(c.formula);
  switch (c.cmp) {
    case Comparator::Ge:
    case Comparator::Gt: return payoff(body, c.cmp, c.bound, c.coefficient);
    case Comparator::Le: return payoff(body, Comparator::Ge, -c.bound, -c.coefficient);
    case Comparator::Lt: return payoff(body, Comparator::Gt, -c.bound, -c.coefficient);
    case Comparator::Eq:
      return conj(payoff(body, Comparator::Ge, c.bound, c.coefficient),
                  payoff(body, Comparator::Ge, -c.bound, -c.coefficient));
  }
  return payoff(body, c.cmp, c.bound, c.coefficient);
}

}  // namespace

StateFormula desugar(const StateFormula& f) {
  return std::visit(
      Overloaded{
          [&](const state::Prop&) { return f; },
          [&](const state::Const&) { return f; },
          [](const state::Not& n) { return neg(desugar(n.arg)); },
          [](const state::And& n) { return conj(desugar(n.lhs), desugar(n.rhs)); },
          [](const state::Or& n) { return disj(desugar(n.lhs), desugar(n.rhs)); },
          [](const state::Implies& n) { return disj(neg(desugar(n.lhs)), desugar(n.rhs)); },
          [](const state::Modal& n) { return modal(n.attitude, desugar(n.arg), n.procedure); },
          [](const state::Quantified& n) {
            auto body = desugar(n.arg);
            if (n.quantifier == Quantifier::Optional) return optional(body);
            return neg(optional(neg(body)));
          },
          [](const state::Prob& n) { return desugar_prob(n); },
          [](const state::Payoff& n) { return desugar_payoff(n); },
      },
      f->node);
}

PathFormula desugar(const PathFormula& p) {
  return std::visit(
      Overloaded{
          [](const path::State& n) { return as_path(desugar(n.formula)); },
          [](const path::Done& n) { return done(desugar_event(n.event)); },
          [](const path::Not& n) { return neg(desugar(n.arg)); },
          [](const path::And& n) { return conj(desugar(n.lhs), desugar(n.rhs)); },
          [](const path::Or& n) { return disj(desugar(n.lhs), desugar(n.rhs)); },
          [](const path::Implies& n) { return disj(neg(desugar(n.lhs)), desugar(n.rhs)); },
          [](const path::Eventually& n) { return eventually(desugar(n.arg)); },
      },
      p->node);
}

}  // namespace bdi
