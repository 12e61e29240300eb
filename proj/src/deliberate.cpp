#include "bdi/deliberate.hpp"

#include <algorithm>
#include <functional>

#include "bdi/parser.hpp"

namespace bdi {

std::string to_text(const Plan& p) {
  if (p.steps.empty()) return "nil";
  std::string out;
  for (const auto& s : p.steps) {
    if (!out.empty()) out += ";";
    out += s.name;
    if (s.kind == Step::Kind::Test) out += "?";
  }
  return out;
}

Plan parse_plan(std::string_view text) {
  Plan p;
  if (text == "nil") return p;
  std::size_t start = 0;
  while (true) {
    auto end = text.find(';', start);
    std::string_view part = text.substr(start, end == std::string_view::npos ? end : end - start);
    bool is_test = !part.empty() && part.back() == '?';
    if (is_test) part.remove_suffix(1);
    if (!is_identifier(part)) throw ParseError("malformed plan step '" + std::string(part) + "'");
    p.steps.push_back({is_test ? Step::Kind::Test : Step::Kind::Event, std::string(part)});
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return p;
}

Plan strip_tests(const Plan& p) {
  Plan out;
  for (const auto& s : p.steps)
    if (s.kind == Step::Kind::Event) out.steps.push_back(s);
  return out;
}

Plan drop_trailing_tests(const Plan& p) {
  Plan out = p;
  while (!out.steps.empty() && out.steps.back().kind == Step::Kind::Test) out.steps.pop_back();
  return out;
}

EventExpr plan_event(const Plan& p) {
  if (p.steps.empty()) throw ModelError("the empty plan has no event expression");
  EventExpr out;
  for (const auto& s : p.steps) {
    EventExpr e = s.kind == Step::Kind::Event ? primitive(s.name) : test(prop(s.name));
    out = out ? sequence(out, e) : e;
  }
  return out;
}

std::map<std::string, double> node_values(const DecisionTree& dt, Procedure proc) {
  TreeIndex index(dt);
  std::map<std::string, double> v;
  std::function<double(const std::string&)> eval = [&](const std::string& id) -> double {
    if (auto it = v.find(id); it != v.end()) return it->second;
    double out = 0.0;
    switch (index.kind(id)) {
      case NodeKind::Terminal:
        out = index.payoff(id);
        break;
      case NodeKind::Decision: {
        bool first = true;
        for (const auto* a : index.events(id)) {
          double c = eval(a->to);
          if (first || c > out) out = c;
          first = false;
        }
        break;
      }
      case NodeKind::Chance: {
        bool first = true;
        for (const auto* a : index.chances(id)) {
          double c = eval(a->to);
          if (proc == Procedure::Maximin) {
            if (first || c < out) out = c;
          } else {
            out += a->prob * c;
          }
          first = false;
        }
#ifdef BDI_INJECT_FAULT
        if (proc == Procedure::MaxExpVal) out += 1e-3;
#endif
        break;
      }
    }
    v[id] = out;
    return out;
  };
  eval(dt.root);
  return v;
}

double value(const DecisionTree& dt, const std::string& node, Procedure proc) {
  auto v = node_values(dt, proc);
  auto it = v.find(node);
  if (it == v.end()) throw ModelError("node " + node + " is not reachable from the root");
  return it->second;
}

namespace {

void sort_unique(std::vector<Plan>& plans) {
  std::sort(plans.begin(), plans.end(),
            [](const Plan& a, const Plan& b) { return to_text(a) < to_text(b); });
  plans.erase(std::unique(plans.begin(), plans.end()), plans.end());
}

std::vector<Plan> prefixed(const Step& step, const std::vector<Plan>& tails) {
  std::vector<Plan> out;
  for (const auto& t : tails) {
    Plan p;
    p.steps.push_back(step);
    p.steps.insert(p.steps.end(), t.steps.begin(), t.steps.end());
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<Plan> annotated_delta(const DecisionTree& dt, const std::string& node,
                                  Procedure proc) {
  TreeIndex index(dt);
  auto v = node_values(dt, proc);
  if (!v.contains(node)) throw ModelError("node " + node + " is not reachable from the root");
  std::function<std::vector<Plan>(const std::string&)> best =
      [&](const std::string& id) -> std::vector<Plan> {
    std::vector<Plan> out;
    switch (index.kind(id)) {
      case NodeKind::Terminal:
        out.push_back(Plan{});
        break;
      case NodeKind::Decision:
        for (const auto* a : index.events(id)) {
          if (!nearly_equal(v.at(a->to), v.at(id))) continue;
          auto more = prefixed({Step::Kind::Event, a->event}, best(a->to));
          out.insert(out.end(), more.begin(), more.end());
        }
        break;
      case NodeKind::Chance:
        for (const auto* a : index.chances(id)) {
          if (proc == Procedure::Maximin && !nearly_equal(v.at(a->to), v.at(id))) continue;
          auto more = prefixed({Step::Kind::Test, a->state}, best(a->to));
          out.insert(out.end(), more.begin(), more.end());
        }
        break;
    }
    return out;
  };
  auto plans = best(node);
  sort_unique(plans);
  return plans;
}

std::vector<Plan> delta(const DecisionTree& dt, const std::string& node, Procedure proc) {
  auto plans = annotated_delta(dt, node, proc);
  for (auto& p : plans) p = proc == Procedure::MaxExpVal ? drop_trailing_tests(p) : strip_tests(p);
  sort_unique(plans);
  return plans;
}

DeliberationOutcome deliberate(const DecisionTree& dt, Procedure proc) {
  DeliberationOutcome out;
  out.procedure = proc;
  out.node_values = node_values(dt, proc);
  out.root_value = out.node_values.at(dt.root);
  out.realizations = annotated_delta(dt, dt.root, proc);
  out.plans = delta(dt, dt.root, proc);
  return out;
}

std::vector<StateFormula> intention_formulas(const DeliberationOutcome& outcome) {
  std::vector<StateFormula> out;
  auto add = [&](StateFormula f) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
  };
  auto tag = [&](PathFormula p) { return intend(inevitable(std::move(p)), outcome.procedure); };

  bool conditional = false;
  for (const auto& p : outcome.plans)
    for (const auto& s : p.steps) conditional = conditional || s.kind == Step::Kind::Test;

  if (!conditional) {
    // Longest common suffix of the event sequences.
    std::vector<std::string> suffix;
    bool first = true;
    for (const auto& p : outcome.plans) {
      std::vector<std::string> events;
      for (const auto& s : p.steps) events.push_back(s.name);
      if (first) {
        suffix = events;
        first = false;
        continue;
      }
      std::size_t n = 0;
      while (n < suffix.size() && n < events.size() &&
             suffix[suffix.size() - 1 - n] == events[events.size() - 1 - n])
        ++n;
      suffix.erase(suffix.begin(), suffix.end() - static_cast<std::ptrdiff_t>(n));
    }
    for (const auto& e : suffix) add(tag(eventually(done(primitive(e)))));
    return out;
  }

  for (const auto& p : outcome.plans) {
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
      if (p.steps[i].kind != Step::Kind::Test) continue;
      if (i + 1 >= p.steps.size() || p.steps[i + 1].kind != Step::Kind::Event) continue;
      Plan before{{p.steps.begin(), p.steps.begin() + static_cast<std::ptrdiff_t>(i)}};
      PathFormula cond = as_path(prop(p.steps[i].name));
      if (!before.steps.empty()) cond = conj(done(plan_event(before)), cond);
      PathFormula then = eventually(done(primitive(p.steps[i + 1].name)));
      add(tag(eventually(implies(cond, then))));
    }
  }
  return out;
}

}  // namespace bdi
