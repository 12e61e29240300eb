#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bdi/deliberate.hpp"
#include "bdi/dtree.hpp"
#include "bdi/interpretation.hpp"
#include "bdi/policy.hpp"
#include "bdi/transform.hpp"

namespace bdi {

struct PlanIntentionWitness {
  Plan plan;
  /// The plan with a test at every chance node it crosses before its last
  /// event.
  Plan realization;
  /// INTEND[d](OPTIONAL(<> done(plan))), checked for information.
  StateFormula literal;
  bool literal_holds = false;
  /// What must hold. The literal formula for plans that cross no chance
  /// node; otherwise INTEND[d](OPTIONAL(<> done(g)) -> OPTIONAL(<> done(r)))
  /// with r the realization and g its prefix up to the last test, since a
  /// conditional plan is only realizable in worlds where its tests pass.
  StateFormula formula;
  bool holds = false;
};

struct PlanIntentionReport {
  bool holds = true;
  std::vector<PlanIntentionWitness> witnesses;
};

/// Checks every plan of `outcome` against a model already deliberated with
/// the same procedure, at its designated situation.
PlanIntentionReport check_plans_intended(const DeliberationOutcome& outcome,
                                         const Interpretation& deliberated);
/// transform + pw_deliberate + deliberate, then the check above.
PlanIntentionReport check_plans_intended(const DecisionTree& dt, Procedure proc,
                                         const std::vector<ExtraBranch>& extras = {});

struct OracleReport {
  double tree_value = 0.0;
  double policy_value = 0.0;
  bool values_agree = false;
  /// (point, event) choices of the realizations, restricted to positive
  /// probability, against those of the optimal policies.
  std::set<std::pair<PointId, std::string>> tree_choices;
  std::set<std::pair<PointId, std::string>> policy_choices;
  bool choices_agree = false;
  std::size_t policies = 0;
};

OracleReport compare_with_policies(const DecisionTree& dt, const DeliberationOutcome& outcome,
                                   const PwResult& pw);

}  // namespace bdi
