#include "bdi/verify.hpp"

#include "bdi/conditions.hpp"
#include "bdi/deliberate.hpp"
#include "bdi/printer.hpp"
#include "bdi/satisfaction.hpp"
#include "bdi/plans_intended.hpp"
#include "bdi/transform.hpp"

namespace bdi {

std::string_view to_string(TrialClass c) {
  return c == TrialClass::MaxExpVal ? "maxexpval" : "maximin-restricted";
}

std::optional<TrialClass> parse_trial_class(std::string_view text) {
  if (text == "maxexpval") return TrialClass::MaxExpVal;
  if (text == "maximin-restricted") return TrialClass::MaximinRestricted;
  return std::nullopt;
}

GeneratorOptions generator_options(TrialClass c) {
  GeneratorOptions o;
  if (c == TrialClass::MaximinRestricted) {
    o.single_occurrence = true;
    o.independent_tables = true;
  }
  return o;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

namespace {

// Replays every root-to-leaf path of each goal world in the tree.
std::optional<std::string> replay_paths(const DecisionTree& dt, const TransformResult& tr) {
  TreeIndex index(dt);
  const Interpretation& m = tr.interpretation;
  for (const auto& g : tr.goal_worlds) {
    const auto& sigma = tr.world_index.at(g).assignment;
    const auto& w = m.world(g);
    auto settle = [&](std::string node) {
      while (index.kind(node) == NodeKind::Chance) {
        const auto& state = sigma.at(index.variable_at(node));
        for (const auto* a : index.chances(node))
          if (a->state == state) {
            node = a->to;
            break;
          }
      }
      return node;
    };
    for (const auto& path : fullpaths(w, w.root())) {
      std::string node = settle(dt.root);
      for (std::size_t i = 1; i < path.points.size(); ++i) {
        const Arc* arc = w.incoming(path.points[i]);
        const EventArc* next = nullptr;
        for (const auto* a : index.events(node))
          if (a->event == arc->event) next = a;
        if (next == nullptr) return g + ": event " + arc->event + " not available at " + node;
        node = settle(next->to);
        if (point_id_for(dt, node) != path.points[i])
          return g + ": point " + path.points[i] + " replays to node " + node;
      }
      if (index.kind(node) != NodeKind::Terminal) return g + ": path ends at inner node " + node;
      if (w.payoff(path.points.back()) != index.payoff(node))
        return g + ": payoff mismatch at " + path.points.back();
    }
  }
  return std::nullopt;
}

std::string plan_list(const std::vector<Plan>& plans) {
  std::string out;
  for (const auto& p : plans) out += (out.empty() ? "" : ", ") + to_text(p);
  return "{" + out + "}";
}

}  // namespace

std::optional<TrialFailure> run_trial(const DecisionTree& dt, TrialClass c, std::mt19937_64& rng,
                                      TrialStats& stats) {
  auto fail = [&](std::string check, std::string detail) {
    return TrialFailure{0, std::move(check), std::move(detail), dt};
  };
  const Procedure proc =
      c == TrialClass::MaxExpVal ? Procedure::MaxExpVal : Procedure::Maximin;
  try {
    auto violations = validate(dt);
    if (!violations.empty())
      return fail("tree validity", std::string(to_string(violations.front().kind)) + ": " +
                                       violations.front().detail);
    if (!(parse_dtree(dump_dtree(dt)) == dt))
      return fail("serialization", "store/load changed the tree");

    TransformResult tr = transform(dt);
    const Interpretation& m = tr.interpretation;
    stats.goal_worlds += tr.goal_worlds.size();
    auto issues = validate_interpretation(m);
    if (!issues.empty()) return fail("model validity", issues.front().detail);
    auto conditions = check_conditions(m, m.designated);
    if (!conditions.c1.pass()) return fail("C1", conditions.c1.offenders.front());
    if (!conditions.c2.pass()) return fail("C2", conditions.c2.offenders.front());
    if (!conditions.c3.pass()) return fail("C3", conditions.c3.offenders.front());
    if (auto bad = replay_paths(dt, tr)) return fail("path payoffs", *bad);

    DeliberationOutcome outcome = deliberate(dt, proc);
    PwResult pw = pw_deliberate_detailed(m, proc);
    stats.policies += pw.policy_count;
    ConditionOptions c4;
    c4.procedure = proc;
    auto after = check_conditions(pw.interpretation, m.designated, c4);
    if (!after.c4.pass()) return fail("C4", after.c4.offenders.front());

    OracleReport oracle = compare_with_policies(dt, outcome, pw);
    if (!oracle.values_agree)
      return fail("oracle value", "tree " + format_exact(oracle.tree_value) + ", policies " +
                                      format_exact(oracle.policy_value));
    if (c == TrialClass::MaxExpVal && !oracle.choices_agree)
      return fail("oracle choices", "delta and the optimal policies choose differently");

    PlanIntentionReport intended = check_plans_intended(outcome, pw.interpretation);
    for (const auto& w : intended.witnesses)
      if (!w.holds) return fail("plans intended", render(w.formula) + " is false");

    for (const auto& f : intention_formulas(outcome)) {
      ++stats.intention_formulas;
      if (!check(pw.interpretation, m.designated, f)) ++stats.intention_formulas_false;
    }

    if (c == TrialClass::MaximinRestricted) {
      DecisionTree perturbed = perturb_probabilities(dt, rng);
      auto moved = delta(perturbed, perturbed.root, proc);
      if (moved != outcome.plans)
        return fail("probability invariance",
                    plan_list(outcome.plans) + " became " + plan_list(moved));
      DecisionTree stretched = map_payoffs(dt, [](double u) { return (u + 1.0) * (u + 1.0); });
      auto reshaped = delta(stretched, stretched.root, proc);
      if (reshaped != outcome.plans)
        return fail("monotone invariance",
                    plan_list(outcome.plans) + " became " + plan_list(reshaped));
    }
  } catch (const Error& e) {
    return fail("exception", e.what());
  }
  return std::nullopt;
}

VerifyReport run_verify(std::size_t trials, std::uint64_t seed, TrialClass c) {
  VerifyReport report;
  report.trials = trials;
  const GeneratorOptions options = generator_options(c);
  for (std::size_t i = 0; i < trials; ++i) {
    auto rng = trial_rng(seed, i);
    DecisionTree dt = random_tree(rng, options);
    if (auto failure = run_trial(dt, c, rng, report.stats)) {
      failure->trial = i;
      report.failures.push_back(std::move(*failure));
    }
  }
  return report;
}

}  // namespace bdi
