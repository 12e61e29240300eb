#include "bdi/plans_intended.hpp"

#include "bdi/satisfaction.hpp"

namespace bdi {

PlanIntentionReport check_plans_intended(const DeliberationOutcome& outcome,
                                         const Interpretation& deliberated) {
  PlanIntentionReport report;
  const Procedure proc = outcome.procedure;
  auto reach = [](const Plan& p) { return optional(eventually(done(plan_event(p)))); };
  std::set<Plan> seen;
  for (const auto& full : outcome.realizations) {
    Plan r = drop_trailing_tests(full);
    if (r.steps.empty()) continue;  // nothing left to intend
    if (!seen.insert(r).second) continue;
    PlanIntentionWitness w;
    w.realization = r;
    w.plan = proc == Procedure::Maximin ? strip_tests(r) : r;
    w.literal = intend(reach(w.plan), proc);
    w.literal_holds = check(deliberated, deliberated.designated, w.literal);

    std::size_t last_test = r.steps.size();
    for (std::size_t i = 0; i < r.steps.size(); ++i)
      if (r.steps[i].kind == Step::Kind::Test) last_test = i;
    if (last_test == r.steps.size()) {
      w.formula = w.literal;
      w.holds = w.literal_holds;
    } else {
      Plan guard{{r.steps.begin(), r.steps.begin() + static_cast<std::ptrdiff_t>(last_test + 1)}};
      w.formula = intend(implies(reach(guard), reach(r)), proc);
      w.holds = check(deliberated, deliberated.designated, w.formula);
    }
    report.holds = report.holds && w.holds;
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

PlanIntentionReport check_plans_intended(const DecisionTree& dt, Procedure proc,
                                         const std::vector<ExtraBranch>& extras) {
  auto model = transform(dt, extras).interpretation;
  auto deliberated = pw_deliberate(model, proc);
  return check_plans_intended(deliberate(dt, proc), deliberated);
}

OracleReport compare_with_policies(const DecisionTree& dt, const DeliberationOutcome& outcome,
                                   const PwResult& pw) {
  OracleReport r;
  r.tree_value = outcome.root_value;
  r.policy_value = pw.best_score;
  r.values_agree = nearly_equal(r.tree_value, r.policy_value);
  r.policy_choices = pw.used_choices;
  r.policies = pw.policy_count;

  TreeIndex index(dt);
  for (const auto& plan : outcome.realizations) {
    std::string node = dt.root;
    double reach = 1.0;
    for (const auto& step : plan.steps) {
      if (index.kind(node) == NodeKind::Chance) {
        const ChanceArc* next = nullptr;
        for (const auto* a : index.chances(node))
          if (a->state == step.name) next = a;
        if (step.kind != Step::Kind::Test || next == nullptr)
          throw ModelError("plan " + to_text(plan) + " does not replay at " + node);
        reach *= next->prob;
        node = next->to;
        continue;
      }
      const EventArc* next = nullptr;
      for (const auto* a : index.events(node))
        if (a->event == step.name) next = a;
      if (step.kind != Step::Kind::Event || next == nullptr)
        throw ModelError("plan " + to_text(plan) + " does not replay at " + node);
      if (reach > 0.0) r.tree_choices.insert({point_id_for(dt, node), step.name});
      node = next->to;
    }
  }
  r.choices_agree = r.tree_choices == r.policy_choices;
  return r;
}

}  // namespace bdi
