#pragma once

// Abstract syntax of the BDI branching-time formula language.
//
// Three sorts: state formulas (true at a situation), path formulas (true
// along a fullpath), and event expressions (arguments of done()). Nodes are
// immutable and shared; equality is structural.
//
// Canonical form is maintained by the smart constructors below and is what
// the parser produces:
//   * a path connective whose operands are all embedded state formulas is
//     lifted to the state connective (~p on a path is State(Not p));
//   * [] x is stored as ~<>~x;
//   * event sequences associate to the left.
// Build formulas through these constructors, not by aggregate-initialising
// the node structs, or round-trip equality will not hold.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bdi/common.hpp"

namespace bdi {

/// Immutable shared handle with deep (structural) equality.
template <class T>
class Box {
 public:
  Box() = default;
  explicit Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  explicit operator bool() const { return static_cast<bool>(ptr_); }

  friend bool operator==(const Box& a, const Box& b) {
    if (a.ptr_ == b.ptr_) return true;
    if (!a.ptr_ || !b.ptr_) return false;
    return *a.ptr_ == *b.ptr_;
  }

 private:
  std::shared_ptr<const T> ptr_;
};

struct StateNode;
struct PathNode;
struct EventNode;

using StateFormula = Box<StateNode>;
using PathFormula = Box<PathNode>;
using EventExpr = Box<EventNode>;

enum class Attitude { Belief, Goal, Intention };
enum class Quantifier { Optional, Inevitable };

namespace state {

struct Prop {
  std::string name;
  bool operator==(const Prop&) const = default;
};
struct Const {
  bool value;
  bool operator==(const Const&) const = default;
};
struct Not {
  StateFormula arg;
  bool operator==(const Not&) const = default;
};
struct And {
  StateFormula lhs, rhs;
  bool operator==(const And&) const = default;
};
struct Or {
  StateFormula lhs, rhs;
  bool operator==(const Or&) const = default;
};
struct Implies {
  StateFormula lhs, rhs;
  bool operator==(const Implies&) const = default;
};
/// BEL / GOAL / INTEND. `procedure` is only meaningful for INTEND and
/// selects the intention relation produced by that deliberation procedure.
struct Modal {
  Attitude attitude;
  std::optional<Procedure> procedure;
  StateFormula arg;
  bool operator==(const Modal&) const = default;
};
struct Quantified {
  Quantifier quantifier;
  PathFormula arg;
  bool operator==(const Quantified&) const = default;
};

struct ProbTerm {
  double coefficient = 1.0;
  StateFormula formula;
  StateFormula condition;  // empty handle when unconditional
  bool operator==(const ProbTerm&) const = default;
};

/// sum_i coefficient_i * PROB(formula_i [| condition_i])  cmp  bound
struct Prob {
  std::vector<ProbTerm> terms;
  Comparator cmp = Comparator::Ge;
  double bound = 0.0;
  bool operator==(const Prob&) const = default;
};

/// coefficient * PAYOFF(path) cmp bound, a single payoff atom.
struct Payoff {
  double coefficient = 1.0;
  PathFormula formula;
  Comparator cmp = Comparator::Ge;
  double bound = 0.0;
  bool operator==(const Payoff&) const = default;
};

}  // namespace state

struct StateNode {
  std::variant<state::Prop, state::Const, state::Not, state::And, state::Or, state::Implies,
               state::Modal, state::Quantified, state::Prob, state::Payoff>
      node;
  bool operator==(const StateNode&) const = default;
};

namespace path {

struct State {
  StateFormula formula;
  bool operator==(const State&) const = default;
};
struct Done {
  EventExpr event;
  bool operator==(const Done&) const = default;
};
struct Not {
  PathFormula arg;
  bool operator==(const Not&) const = default;
};
struct And {
  PathFormula lhs, rhs;
  bool operator==(const And&) const = default;
};
struct Or {
  PathFormula lhs, rhs;
  bool operator==(const Or&) const = default;
};
struct Implies {
  PathFormula lhs, rhs;
  bool operator==(const Implies&) const = default;
};
struct Eventually {
  PathFormula arg;
  bool operator==(const Eventually&) const = default;
};

}  // namespace path

struct PathNode {
  std::variant<path::State, path::Done, path::Not, path::And, path::Or, path::Implies,
               path::Eventually>
      node;
  bool operator==(const PathNode&) const = default;
};

namespace event {

struct Primitive {
  std::string name;
  bool operator==(const Primitive&) const = default;
};
struct Sequence {
  EventExpr first, second;
  bool operator==(const Sequence&) const = default;
};
struct Test {
  StateFormula formula;
  bool operator==(const Test&) const = default;
};

}  // namespace event

struct EventNode {
  std::variant<event::Primitive, event::Sequence, event::Test> node;
  bool operator==(const EventNode&) const = default;
};

/// Any of the three sorts; used by render().
using AnyFormula = std::variant<StateFormula, PathFormula, EventExpr>;

// ---------------------------------------------------------------------------
// Smart constructors
// ---------------------------------------------------------------------------

StateFormula prop(std::string name);
StateFormula constant(bool value);
StateFormula neg(StateFormula f);
StateFormula conj(StateFormula a, StateFormula b);
StateFormula disj(StateFormula a, StateFormula b);
StateFormula implies(StateFormula a, StateFormula b);
StateFormula modal(Attitude attitude, StateFormula f,
                   std::optional<Procedure> procedure = std::nullopt);
StateFormula bel(StateFormula f);
StateFormula goal(StateFormula f);
StateFormula intend(StateFormula f, std::optional<Procedure> procedure = std::nullopt);
StateFormula optional(PathFormula p);
StateFormula inevitable(PathFormula p);
StateFormula prob(std::vector<state::ProbTerm> terms, Comparator cmp, double bound);
StateFormula prob(StateFormula f, Comparator cmp, double bound);
StateFormula payoff(PathFormula p, Comparator cmp, double bound, double coefficient = 1.0);

PathFormula as_path(StateFormula f);
PathFormula done(EventExpr e);
PathFormula neg(PathFormula p);
PathFormula conj(PathFormula a, PathFormula b);
PathFormula disj(PathFormula a, PathFormula b);
PathFormula implies(PathFormula a, PathFormula b);
PathFormula eventually(PathFormula p);
PathFormula always(PathFormula p);

EventExpr primitive(std::string name);
EventExpr sequence(EventExpr a, EventExpr b);
EventExpr test(StateFormula f);

/// The embedded state formula when `p` is State(...), else empty.
StateFormula state_of(const PathFormula& p);

/// True when the formula uses only the evaluator's core: no INEVITABLE, no
/// implication, only >= / > comparators, no conditional PROB terms.
bool is_core(const StateFormula& f);
bool is_core(const PathFormula& p);

/// Nesting depth, counting every node.
int depth(const StateFormula& f);
int depth(const PathFormula& p);

}  // namespace bdi
