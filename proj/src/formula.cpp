#include "bdi/formula.hpp"

#include <algorithm>

#include "overloaded.hpp"

namespace bdi {

using detail::Overloaded;

namespace {

StateFormula make(auto node) { return StateFormula(StateNode{std::move(node)}); }
PathFormula make_path(auto node) { return PathFormula(PathNode{std::move(node)}); }

}  // namespace

StateFormula prop(std::string name) { return make(state::Prop{std::move(name)}); }
StateFormula constant(bool value) { return make(state::Const{value}); }
StateFormula neg(StateFormula f) { return make(state::Not{std::move(f)}); }
StateFormula conj(StateFormula a, StateFormula b) {
  return make(state::And{std::move(a), std::move(b)});
}
StateFormula disj(StateFormula a, StateFormula b) {
  return make(state::Or{std::move(a), std::move(b)});
}
StateFormula implies(StateFormula a, StateFormula b) {
  return make(state::Implies{std::move(a), std::move(b)});
}

StateFormula modal(Attitude attitude, StateFormula f, std::optional<Procedure> procedure) {
  if (attitude != Attitude::Intention) procedure.reset();
  return make(state::Modal{attitude, procedure, std::move(f)});
}
StateFormula bel(StateFormula f) { return modal(Attitude::Belief, std::move(f)); }
StateFormula goal(StateFormula f) { return modal(Attitude::Goal, std::move(f)); }
StateFormula intend(StateFormula f, std::optional<Procedure> procedure) {
  return modal(Attitude::Intention, std::move(f), procedure);
}
StateFormula optional(PathFormula p) {
  return make(state::Quantified{Quantifier::Optional, std::move(p)});
}
StateFormula inevitable(PathFormula p) {
  return make(state::Quantified{Quantifier::Inevitable, std::move(p)});
}

StateFormula prob(std::vector<state::ProbTerm> terms, Comparator cmp, double bound) {
  return make(state::Prob{std::move(terms), cmp, bound});
}
StateFormula prob(StateFormula f, Comparator cmp, double bound) {
  return prob({state::ProbTerm{1.0, std::move(f), {}}}, cmp, bound);
}
StateFormula payoff(PathFormula p, Comparator cmp, double bound, double coefficient) {
  return make(state::Payoff{coefficient, std::move(p), cmp, bound});
}

PathFormula as_path(StateFormula f) { return make_path(path::State{std::move(f)}); }
PathFormula done(EventExpr e) { return make_path(path::Done{std::move(e)}); }

StateFormula state_of(const PathFormula& p) {
  if (const auto* s = std::get_if<path::State>(&p->node)) return s->formula;
  return {};
}

PathFormula neg(PathFormula p) {
  if (auto s = state_of(p)) return as_path(neg(s));
  return make_path(path::Not{std::move(p)});
}
PathFormula conj(PathFormula a, PathFormula b) {
  auto sa = state_of(a);
  auto sb = state_of(b);
  if (sa && sb) return as_path(conj(sa, sb));
  return make_path(path::And{std::move(a), std::move(b)});
}
PathFormula disj(PathFormula a, PathFormula b) {
  auto sa = state_of(a);
  auto sb = state_of(b);
  if (sa && sb) return as_path(disj(sa, sb));
  return make_path(path::Or{std::move(a), std::move(b)});
}
PathFormula implies(PathFormula a, PathFormula b) {
  auto sa = state_of(a);
  auto sb = state_of(b);
  if (sa && sb) return as_path(implies(sa, sb));
  return make_path(path::Implies{std::move(a), std::move(b)});
}
PathFormula eventually(PathFormula p) { return make_path(path::Eventually{std::move(p)}); }
PathFormula always(PathFormula p) { return neg(eventually(neg(std::move(p)))); }

EventExpr primitive(std::string name) {
  return EventExpr(EventNode{event::Primitive{std::move(name)}});
}
EventExpr sequence(EventExpr a, EventExpr b) {
  if (const auto* s = std::get_if<event::Sequence>(&b->node))
    return sequence(sequence(std::move(a), s->first), s->second);
  return EventExpr(EventNode{event::Sequence{std::move(a), std::move(b)}});
}
EventExpr test(StateFormula f) { return EventExpr(EventNode{event::Test{std::move(f)}}); }

namespace {

bool core_event(const EventExpr& e);

}  // namespace

bool is_core(const StateFormula& f) {
  return std::visit(
      Overloaded{
          [](const state::Prop&) { return true; },
          [](const state::Const&) { return true; },
          [](const state::Not& n) { return is_core(n.arg); },
          [](const state::And& n) { return is_core(n.lhs) && is_core(n.rhs); },
          [](const state::Or& n) { return is_core(n.lhs) && is_core(n.rhs); },
          [](const state::Implies&) { return false; },
          [](const state::Modal& n) { return is_core(n.arg); },
          [](const state::Quantified& n) {
            return n.quantifier == Quantifier::Optional && is_core(n.arg);
          },
          [](const state::Prob& n) {
            if (n.cmp != Comparator::Ge && n.cmp != Comparator::Gt) return false;
            return std::all_of(n.terms.begin(), n.terms.end(), [](const state::ProbTerm& t) {
              return !t.condition && is_core(t.formula);
            });
          },
          [](const state::Payoff& n) {
            return (n.cmp == Comparator::Ge || n.cmp == Comparator::Gt) && is_core(n.formula);
          },
      },
      f->node);
}

bool is_core(const PathFormula& p) {
  return std::visit(Overloaded{
                        [](const path::State& n) { return is_core(n.formula); },
                        [](const path::Done& n) { return core_event(n.event); },
                        [](const path::Not& n) { return is_core(n.arg); },
                        [](const path::And& n) { return is_core(n.lhs) && is_core(n.rhs); },
                        [](const path::Or& n) { return is_core(n.lhs) && is_core(n.rhs); },
                        [](const path::Implies&) { return false; },
                        [](const path::Eventually& n) { return is_core(n.arg); },
                    },
                    p->node);
}

namespace {

bool core_event(const EventExpr& e) {
  return std::visit(Overloaded{
                        [](const event::Primitive&) { return true; },
                        [](const event::Sequence& s) {
                          return core_event(s.first) && core_event(s.second);
                        },
                        [](const event::Test& t) { return is_core(t.formula); },
                    },
                    e->node);
}

int event_depth(const EventExpr& e) {
  return std::visit(Overloaded{
                        [](const event::Primitive&) { return 1; },
                        [](const event::Sequence& s) {
                          return 1 + std::max(event_depth(s.first), event_depth(s.second));
                        },
                        [](const event::Test& t) { return 1 + depth(t.formula); },
                    },
                    e->node);
}

}  // namespace

int depth(const StateFormula& f) {
  return std::visit(
      Overloaded{
          [](const state::Prop&) { return 1; },
          [](const state::Const&) { return 1; },
          [](const state::Not& n) { return 1 + depth(n.arg); },
          [](const state::And& n) { return 1 + std::max(depth(n.lhs), depth(n.rhs)); },
          [](const state::Or& n) { return 1 + std::max(depth(n.lhs), depth(n.rhs)); },
          [](const state::Implies& n) { return 1 + std::max(depth(n.lhs), depth(n.rhs)); },
          [](const state::Modal& n) { return 1 + depth(n.arg); },
          [](const state::Quantified& n) { return 1 + depth(n.arg); },
          [](const state::Prob& n) {
            int d = 0;
            for (const auto& t : n.terms) {
              d = std::max(d, depth(t.formula));
              if (t.condition) d = std::max(d, depth(t.condition));
            }
            return 1 + d;
          },
          [](const state::Payoff& n) { return 1 + depth(n.formula); },
      },
      f->node);
}

int depth(const PathFormula& p) {
  return std::visit(
      Overloaded{
          [](const path::State& n) { return depth(n.formula); },
          [](const path::Done& n) { return 1 + event_depth(n.event); },
          [](const path::Not& n) { return 1 + depth(n.arg); },
          [](const path::And& n) { return 1 + std::max(depth(n.lhs), depth(n.rhs)); },
          [](const path::Or& n) { return 1 + std::max(depth(n.lhs), depth(n.rhs)); },
          [](const path::Implies& n) { return 1 + std::max(depth(n.lhs), depth(n.rhs)); },
          [](const path::Eventually& n) { return 1 + depth(n.arg); },
      },
      p->node);
}

}  // namespace bdi
