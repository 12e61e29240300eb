#pragma once

#include <map>
#include <string>
#include <vector>

#include "bdi/common.hpp"
#include "bdi/dtree.hpp"
#include "bdi/formula.hpp"

namespace bdi {

struct Step {
  enum class Kind { Event, Test };
  Kind kind;
  std::string name;
  auto operator<=>(const Step&) const = default;
};

/// A sequence of events and state tests. Written "Poll;yes?;Sen"; the
/// empty plan (a terminal node's only continuation) is written "nil".
struct Plan {
  std::vector<Step> steps;
  auto operator<=>(const Plan&) const = default;
};

std::string to_text(const Plan& p);
/// Inverse of to_text. Throws ParseError.
Plan parse_plan(std::string_view text);
/// The plan without its tests.
Plan strip_tests(const Plan& p);
/// The plan without tests that no event follows.
Plan drop_trailing_tests(const Plan& p);
/// Folds the steps into one event expression, tests becoming ?state.
/// Throws ModelError for the empty plan.
EventExpr plan_event(const Plan& p);

struct DeliberationOutcome {
  Procedure procedure;
  double root_value = 0.0;
  /// delta at the root, ordered by text.
  std::vector<Plan> plans;
  /// The same plans with a test at every chance node they cross. For
  /// maxexpval these equal `plans`; for maximin they are the plans before
  /// the tests are dropped (several realizations may share one plan).
  std::vector<Plan> realizations;
  std::map<std::string, double> node_values;
};

/// Backward induction: payoff at terminals, max over decisions, min
/// (maximin) or expectation (maxexpval) over chance arcs.
std::map<std::string, double> node_values(const DecisionTree& dt, Procedure proc);
double value(const DecisionTree& dt, const std::string& node, Procedure proc);

/// Best plans from `node`. Maximin follows only worst-case chance branches
/// and emits no tests; maxexpval follows every branch behind a test, except
/// that tests with no event after them are left out.
std::vector<Plan> delta(const DecisionTree& dt, const std::string& node, Procedure proc);
/// delta with a test at every chance node crossed, for both procedures.
std::vector<Plan> annotated_delta(const DecisionTree& dt, const std::string& node,
                                  Procedure proc);

DeliberationOutcome deliberate(const DecisionTree& dt, Procedure proc);

/// Intentions implied by an outcome, tagged with its procedure.
///
/// Unconditional outcomes (maximin, or plans without tests): one
/// INTEND(INEVITABLE(<> done(e))) per event in the plans' common suffix.
/// Conditional outcomes: for every test s? followed by an event e, with p
/// the steps before the test,
/// INTEND(INEVITABLE(<> (done(p) & s -> <> done(e)))).
std::vector<StateFormula> intention_formulas(const DeliberationOutcome& outcome);

}  // namespace bdi
