// Acceptance run: one PASS/FAIL line per criterion, with timings.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "bdi/conditions.hpp"
#include "bdi/deliberate.hpp"
#include "bdi/desugar.hpp"
#include "bdi/generate.hpp"
#include "bdi/model_io.hpp"
#include "bdi/parser.hpp"
#include "bdi/policy.hpp"
#include "bdi/printer.hpp"
#include "bdi/satisfaction.hpp"
#include "bdi/plans_intended.hpp"
#include "bdi/transform.hpp"
#include "bdi/verify.hpp"
#include "cli.hpp"
#include "support/fuzz.hpp"
#include "support/oracles.hpp"
#include "support/random_model.hpp"
#include "support/reference_eval.hpp"

using namespace bdi;
using bdi::testing::fixture;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Cli {
  int code;
  std::string out;
};

Cli run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bdi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

std::set<std::string> plan_texts(const std::vector<Plan>& plans) {
  std::set<std::string> out;
  for (const auto& p : plans) out.insert(to_text(p));
  return out;
}

std::string joined(const std::set<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return "{" + out + "}";
}

// 1 and 2: the deliberate command on the fixture.
Verdict golden_deliberate(const char* procedure, std::set<std::string> plans, double value) {
  Verdict v;
  auto r = run_cli({"--json", "deliberate", fixture("phil.dtree"), "--procedure", procedure});
  v.require(r.code == 0, "exit code " + std::to_string(r.code));
  if (!v.pass) return v;
  auto j = nlohmann::json::parse(r.out);
  std::set<std::string> got;
  for (const auto& p : j["plans"]) got.insert(p.get<std::string>());
  double root = j["value"].get<double>();
  v.require(got == plans, "plans " + joined(got));
  v.require(std::abs(root - value) <= 1e-9, "value " + format_exact(root));
  v.detail = v.pass ? "plans " + joined(got) + ", value " + format_number(root) : v.detail;
  return v;
}

Verdict transform_golden() {
  Verdict v;
  auto tr = transform(load_dtree(fixture("phil.dtree")), load_extras(fixture("phil_extras.json")));
  const auto& m = tr.interpretation;
  v.require(tr.goal_worlds.size() == 4, std::to_string(tr.goal_worlds.size()) + " goal worlds");
  const double expected[] = {0.336, 0.084, 0.116, 0.464};
  double total = 0.0;
  std::string weights;
  for (std::size_t i = 0; i < tr.belief_worlds.size() && i < 4; ++i) {
    double mu = m.prob.at(m.designated).at(tr.belief_worlds[i]);
    total += mu;
    weights += (weights.empty() ? "" : ", ") + format_number(mu);
    v.require(std::abs(mu - expected[i]) <= 1e-9,
              tr.belief_worlds[i] + " has weight " + format_exact(mu));
  }
  v.require(std::abs(total - 1.0) <= 1e-9, "weights sum to " + format_exact(total));
  v.require(check_conditions(m, m.designated).c2.pass(), "C2 fails");
  if (v.pass) v.detail = "4 goal worlds, mu {" + weights + "}";
  return v;
}

Verdict formula_golden() {
  Verdict v;
  auto m = load_model(fixture("phil.model"));
  const std::pair<const char*, bool> cases[] = {
      {"BEL(OPTIONAL(<> done(Sen)))", true},
      {"PROB(OPTIONAL(<> yes)) = 0.42", true},
      {"PAYOFF(<> (done(Sen) & loss)) = 100", true},
      {"PAYOFF(<> (done(Sen) & win)) = 300", true},
      {"BEL(OPTIONAL(<> done(Ret)))", true},
      {"GOAL(OPTIONAL(<> done(Ret)))", false},
  };
  for (const auto& [text, expected] : cases) {
    bool got = check(m, m.designated, parse_state_formula(text));
    v.require(got == expected, std::string(text) + " is " + (got ? "true" : "false"));
  }
  auto printed = run_cli({"check", fixture("phil.model"), "PROB(OPTIONAL(<> yes)) = 0.42"});
  v.require(printed.code == 0, "check exit code " + std::to_string(printed.code));
  v.require(printed.out.find("PROB(OPTIONAL(<> yes)) = 0.42\n") != std::string::npos,
            "printed measure is not 0.42");
  if (v.pass) v.detail = "six formulas as expected, printed measure 0.42";
  return v;
}

Verdict intention_suite() {
  Verdict v;
  auto dt = load_dtree(fixture("phil.dtree"));
  auto base = transform(dt, load_extras(fixture("phil_extras.json"))).interpretation;
  const std::pair<Procedure, std::vector<const char*>> expected[] = {
      {Procedure::Maximin, {"INTEND[maximin](INEVITABLE(<> done(Rep)))"}},
      {Procedure::MaxExpVal,
       {"INTEND[maxexpval](INEVITABLE(<> (done(Poll) & no -> <> done(Rep))))",
        "INTEND[maxexpval](INEVITABLE(<> (done(Poll) & yes -> <> done(Sen))))"}},
  };
  int checked = 0;
  for (const auto& [proc, texts] : expected) {
    auto outcome = deliberate(dt, proc);
    auto m = pw_deliberate(base, proc);
    auto formulas = intention_formulas(outcome);
    v.require(formulas.size() == texts.size(), "wrong number of intention formulas");
    for (const char* text : texts) {
      auto f = parse_state_formula(text);
      bool emitted = std::find(formulas.begin(), formulas.end(), f) != formulas.end();
      v.require(emitted, std::string(text) + " not emitted");
      v.require(check(m, m.designated, f), std::string(text) + " is false");
      ++checked;
    }
    auto intended = check_plans_intended(outcome, m);
    v.require(intended.holds, std::string("plans not intended under ") + std::string(to_string(proc)));
  }
  if (v.pass) v.detail = std::to_string(checked) + " intention formulas true, every plan intended under both";
  return v;
}

Verdict property_maxexpval() {
  Verdict v;
  const auto options = generator_options(TrialClass::MaxExpVal);
  std::size_t brute_checked = 0, policies = 0;
  for (std::size_t i = 0; i < 200 && v.pass; ++i) {
    auto rng = trial_rng(7, i);
    auto dt = random_tree(rng, options);
    std::string at = "tree " + std::to_string(i) + ": ";
    auto tr = transform(dt);
    const auto& m = tr.interpretation;
    auto c = check_conditions(m, m.designated);
    v.require(c.c1.pass() && c.c2.pass() && c.c3.pass(), at + "C1-C3");
    auto outcome = deliberate(dt, Procedure::MaxExpVal);
    auto pw = pw_deliberate_detailed(m, Procedure::MaxExpVal);
    policies += pw.policy_count;
    ConditionOptions c4;
    c4.procedure = Procedure::MaxExpVal;
    v.require(check_conditions(pw.interpretation, m.designated, c4).c4.pass(), at + "C4");
    v.require(std::abs(outcome.root_value - pw.best_score) <= 1e-9,
              at + "value " + format_exact(outcome.root_value) + " vs policies " +
                  format_exact(pw.best_score));
    auto oracle = compare_with_policies(dt, outcome, pw);
    v.require(oracle.choices_agree, at + "delta and argmax policies choose differently");
    if (auto brute = bdi::testing::brute_force_policies(tr, Procedure::MaxExpVal)) {
      ++brute_checked;
      v.require(std::abs(brute->best - outcome.root_value) <= 1e-9, at + "brute-force value");
      v.require(brute->choices == oracle.tree_choices, at + "brute-force choices");
    }
    v.require(check_plans_intended(outcome, pw.interpretation).holds, at + "plans not intended");
  }
  if (v.pass)
    v.detail = "200 trees, " + std::to_string(policies) + " policies, " +
               std::to_string(brute_checked) + " also brute-forced";
  return v;
}

Verdict property_maximin() {
  Verdict v;
  const auto options = generator_options(TrialClass::MaximinRestricted);
  for (std::size_t i = 0; i < 200 && v.pass; ++i) {
    auto rng = trial_rng(7, i);
    auto dt = random_tree(rng, options);
    std::string at = "tree " + std::to_string(i) + ": ";
    auto tr = transform(dt);
    auto outcome = deliberate(dt, Procedure::Maximin);
    auto pw = pw_deliberate_detailed(tr.interpretation, Procedure::Maximin);
    v.require(std::abs(outcome.root_value - pw.best_score) <= 1e-9,
              at + "value " + format_exact(outcome.root_value) + " vs policies " +
                  format_exact(pw.best_score));
    auto perturbed = perturb_probabilities(dt, rng);
    v.require(validate(perturbed).empty(), at + "perturbed tree invalid");
    v.require(delta(perturbed, perturbed.root, Procedure::Maximin) == outcome.plans,
              at + "plans changed under new probabilities");
    auto squared = map_payoffs(dt, [](double u) { return (u + 1.0) * (u + 1.0); });
    v.require(delta(squared, squared.root, Procedure::Maximin) == outcome.plans,
              at + "plans changed under a monotone payoff map");
    v.require(check_plans_intended(outcome, pw.interpretation).holds, at + "plans not intended");
  }
  if (v.pass) v.detail = "200 trees: values agree, plan sets invariant";
  return v;
}

Verdict logic_suite() {
  Verdict v;
  bdi::testing::FormulaFuzzer fuzz(2024);
  int round_trips = 0;
  while (round_trips < 1000 && v.pass) {
    auto f = fuzz.state(6);
    if (depth(f) > 6) continue;
    ++round_trips;
    v.require(parse_state_formula(render(f)) == f, "round trip: " + render(f));
  }

  const auto& m = [] {
    static const Interpretation deliberated = pw_deliberate(
        pw_deliberate(load_model(fixture("phil.model")), Procedure::Maximin), Procedure::MaxExpVal);
    return std::cref(deliberated);
  }().get();
  bdi::testing::Vocabulary words;
  words.props = {"yes", "no", "win", "loss", "retired"};
  words.events = {"Poll", "NoPoll", "Sen", "Rep", "Ret"};
  bdi::testing::FormulaFuzzer on_fixture(99, words);
  auto situations = bdi::testing::all_situations(m);
  for (int i = 0; i < 100 && v.pass; ++i) {
    auto f = on_fixture.state(5);
    for (const auto& s : situations)
      v.require(check(m, s, f) == bdi::testing::reference_holds(m, s, f),
                "desugar soundness: " + render(f) + " at " + s.key());
  }

  std::mt19937_64 rng(5);
  std::vector<Interpretation> models{m};
  std::size_t with_mu = 0;
  for (int k = 0; k < 20; ++k) models.push_back(bdi::testing::random_model(rng));
  for (const auto& model : models) {
    for (const auto& s : bdi::testing::all_situations(model)) {
      auto psi = (&model == &models.front() ? on_fixture : fuzz).path(4);
      v.require(check(model, s, inevitable(psi)) == check(model, s, neg(optional(neg(psi)))),
                "duality: " + render(psi) + " at " + s.key());
      // Only the designated situation carries a distribution in transformed
      // models; elsewhere the belief set is empty and PROB is vacuous.
      if (model.prob.count(s)) {
        ++with_mu;
        v.require(check(model, s, prob(constant(true), Comparator::Eq, 1.0)),
                  "PROB(true) = 1 fails at " + s.key());
        v.require(prob_measure(model, s, constant(false)) == 0.0,
                  "PROB(false) is not 0 at " + s.key());
      }
      auto phi = desugar((&model == &models.front() ? on_fixture : fuzz).state(4));
      auto chi = desugar((&model == &models.front() ? on_fixture : fuzz).state(4));
      v.require(prob_measure(model, s, conj(phi, chi)) <= prob_measure(model, s, phi) + kTolerance,
                "monotonicity: " + render(phi) + ", " + render(chi));
    }
  }
  if (v.pass)
    v.detail = "1000 round trips, 100 formulas x " + std::to_string(situations.size()) +
               " situations, duality and monotonicity on " + std::to_string(models.size()) +
               " models, PROB(true) = 1 at " + std::to_string(with_mu) + " situations";
  return v;
}

Verdict affine_invariance() {
  Verdict v;
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> scale(0.01, 20.0), shift(-1000.0, 1000.0);
  double worst = 0.0;
  for (int i = 0; i < 50 && v.pass; ++i) {
    auto dt = random_tree(rng);
    auto plans = delta(dt, dt.root, Procedure::MaxExpVal);
    double root = value(dt, dt.root, Procedure::MaxExpVal);
    for (int k = 0; k < 10; ++k) {
      double a = scale(rng), b = shift(rng);
      auto moved = map_payoffs(dt, [&](double u) { return a * u + b; });
      v.require(delta(moved, moved.root, Procedure::MaxExpVal) == plans,
                "tree " + std::to_string(i) + ": plans changed");
      double error = std::abs(value(moved, moved.root, Procedure::MaxExpVal) - (a * root + b));
      worst = std::max(worst, error);
      v.require(error <= 1e-9, "tree " + std::to_string(i) + ": value off by " + format_exact(error));
    }
  }
  if (v.pass) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.1e", worst);
    v.detail = "50 trees x 10 maps, largest value error " + std::string(buffer);
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget;  // seconds
    std::function<Verdict()> run;
  };
  const Criterion criteria[] = {
      {1, "maximin golden", 1.0,
       [] { return golden_deliberate("maximin", {"NoPoll;Rep", "Poll;Rep"}, 200.0); }},
      {2, "maxexpval golden", 1.0,
       [] { return golden_deliberate("maxexpval", {"Poll;yes?;Sen", "Poll;no?;Rep"}, 225.2); }},
      {3, "transform golden", 0.0, transform_golden},
      {4, "formula golden", 1.0, formula_golden},
      {5, "intentions and intended plans", 0.0, intention_suite},
      {6, "maxexpval property suite", 60.0, property_maxexpval},
      {7, "maximin-restricted property suite", 60.0, property_maximin},
      {8, "logic suite", 30.0, logic_suite},
      {9, "affine invariance", 0.0, affine_invariance},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0.0 && seconds >= c.budget && v.pass) {
      v.pass = false;
      v.detail += " (over the " + format_number(c.budget) + " s budget)";
    }
    if (!v.pass) ++failed;
    std::printf("%s  %d %-36s %7.3f s  %s\n", v.pass ? "PASS" : "FAIL", c.number, c.name, seconds,
                v.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
