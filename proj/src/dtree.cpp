#include "bdi/dtree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "bdi/common.hpp"
#include "bdi/parser.hpp"

namespace bdi {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Decision: return "decision";
    case NodeKind::Chance: return "chance";
    case NodeKind::Terminal: return "terminal";
  }
  return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  if (text == "decision") return NodeKind::Decision;
  if (text == "chance") return NodeKind::Chance;
  if (text == "terminal") return NodeKind::Terminal;
  return std::nullopt;
}

std::string_view to_string(DtViolationKind kind) {
  switch (kind) {
    case DtViolationKind::EmptyTree: return "EmptyTree";
    case DtViolationKind::BadIdentifier: return "BadIdentifier";
    case DtViolationKind::DuplicateNode: return "DuplicateNode";
    case DtViolationKind::UnknownNode: return "UnknownNode";
    case DtViolationKind::NotATree: return "NotATree";
    case DtViolationKind::ArcKindMismatch: return "ArcKindMismatch";
    case DtViolationKind::DecisionWithoutChoice: return "DecisionWithoutChoice";
    case DtViolationKind::DuplicateEvent: return "DuplicateEvent";
    case DtViolationKind::ChanceArity: return "ChanceArity";
    case DtViolationKind::ChanceToChance: return "ChanceToChance";
    case DtViolationKind::ProbRange: return "ProbRange";
    case DtViolationKind::ProbSumViolation: return "ProbSumViolation";
    case DtViolationKind::StateOwnershipViolation: return "StateOwnershipViolation";
    case DtViolationKind::MixedVariables: return "MixedVariables";
    case DtViolationKind::IncompleteChance: return "IncompleteChance";
    case DtViolationKind::MissingPayoff: return "MissingPayoff";
    case DtViolationKind::PayoffOnNonTerminal: return "PayoffOnNonTerminal";
    case DtViolationKind::TableViolation: return "TableViolation";
    case DtViolationKind::InconsistentProbability: return "InconsistentProbability";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// TreeIndex

TreeIndex::TreeIndex(const DecisionTree& dt) : dt_(&dt) {
  for (const auto& n : dt.nodes) kind_.try_emplace(n.id, n.kind);
  for (const auto& v : dt.variables)
    for (const auto& s : v.states) owner_.try_emplace(s, &v);
  for (const auto& a : dt.event_arcs) {
    events_[a.from].push_back(&a);
    parent_.try_emplace(a.to, a.from);
  }
  for (const auto& a : dt.chance_arcs) {
    chances_[a.from].push_back(&a);
    parent_.try_emplace(a.to, a.from);
  }
  for (auto& [_, arcs] : events_)
    std::stable_sort(arcs.begin(), arcs.end(),
                     [](const EventArc* a, const EventArc* b) { return a->event < b->event; });
  for (auto& [node, arcs] : chances_) {
    const ChanceVariable* var = arcs.empty() ? nullptr : owner(arcs.front()->state);
    if (var == nullptr) continue;
    variable_[node] = var->name;
    auto rank = [var](const ChanceArc* a) {
      auto it = std::find(var->states.begin(), var->states.end(), a->state);
      return it - var->states.begin();
    };
    std::stable_sort(arcs.begin(), arcs.end(),
                     [&](const ChanceArc* a, const ChanceArc* b) { return rank(a) < rank(b); });
  }
}

NodeKind TreeIndex::kind(const std::string& id) const {
  auto it = kind_.find(id);
  if (it == kind_.end()) throw ModelError("unknown decision-tree node " + id);
  return it->second;
}

const std::vector<const EventArc*>& TreeIndex::events(const std::string& id) const {
  static const std::vector<const EventArc*> kNone;
  auto it = events_.find(id);
  return it == events_.end() ? kNone : it->second;
}

const std::vector<const ChanceArc*>& TreeIndex::chances(const std::string& id) const {
  static const std::vector<const ChanceArc*> kNone;
  auto it = chances_.find(id);
  return it == chances_.end() ? kNone : it->second;
}

const std::string& TreeIndex::parent(const std::string& id) const {
  static const std::string kNone;
  auto it = parent_.find(id);
  return it == parent_.end() ? kNone : it->second;
}

const std::string& TreeIndex::variable_at(const std::string& chance_node) const {
  static const std::string kNone;
  auto it = variable_.find(chance_node);
  return it == variable_.end() ? kNone : it->second;
}

const ChanceVariable* TreeIndex::owner(const std::string& state) const {
  auto it = owner_.find(state);
  return it == owner_.end() ? nullptr : it->second;
}

double TreeIndex::payoff(const std::string& terminal) const {
  auto it = dt_->payoffs.find(terminal);
  if (it == dt_->payoffs.end()) throw ModelError("terminal " + terminal + " has no payoff");
  return it->second;
}

// ---------------------------------------------------------------------------
// Joint distribution

namespace {

const TableRow* matching_row(const ChanceVariable& v,
                             const std::map<std::string, std::string>& earlier,
                             std::size_t* matches = nullptr) {
  const TableRow* found = nullptr;
  std::size_t count = 0;
  for (const auto& row : v.table) {
    bool ok = true;
    for (const auto& [var, state] : row.given) {
      auto it = earlier.find(var);
      ok = ok && it != earlier.end() && it->second == state;
    }
    if (!ok) continue;
    ++count;
    if (found == nullptr) found = &row;
  }
  if (matches != nullptr) *matches = count;
  return found;
}

double row_prob(const TableRow& row, const std::string& state) {
  auto it = row.probs.find(state);
  return it == row.probs.end() ? 0.0 : it->second;
}

}  // namespace

std::vector<JointAssignment> joint_distribution(const DecisionTree& dt) {
  std::vector<JointAssignment> out;
  JointAssignment current;
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == dt.variables.size()) {
      out.push_back(current);
      return;
    }
    const ChanceVariable& v = dt.variables[i];
    const TableRow* row = matching_row(v, current.assignment);
    if (row == nullptr) throw ModelError("variable " + v.name + " has no table row for this case");
    double before = current.prob;
    for (const auto& s : v.states) {
      current.assignment[v.name] = s;
      current.prob = before * row_prob(*row, s);
      extend(i + 1);
    }
    current.assignment.erase(v.name);
    current.prob = before;
  };
  extend(0);
  return out;
}

std::optional<double> conditional(const std::vector<JointAssignment>& joint,
                                  const std::string& variable, const std::string& state,
                                  const std::map<std::string, std::string>& evidence) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& j : joint) {
    bool ok = true;
    for (const auto& [var, s] : evidence) {
      auto it = j.assignment.find(var);
      ok = ok && it != j.assignment.end() && it->second == s;
    }
    if (!ok) continue;
    den += j.prob;
    auto it = j.assignment.find(variable);
    if (it != j.assignment.end() && it->second == state) num += j.prob;
  }
  if (den <= 0.0) return std::nullopt;
  return num / den;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool is_point_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id)
    if (c == '@' || c == '"' || std::isspace(static_cast<unsigned char>(c)) ||
        std::iscntrl(static_cast<unsigned char>(c)))
      return false;
  return true;
}

class Validator {
 public:
  explicit Validator(const DecisionTree& dt) : dt_(dt), index_(dt) {}

  std::vector<DtViolation> run() {
    if (dt_.nodes.empty()) {
      report(DtViolationKind::EmptyTree, "tree has no nodes");
      return out_;
    }
    names();
    shape();
    bool tables_ok = tables();
    chance_nodes();
    terminals();
    if (tables_ok && shape_ok_ && chance_ok_) consistency();
    return out_;
  }

 private:
  void report(DtViolationKind k, std::string detail) { out_.push_back({k, std::move(detail)}); }

  void names() {
    std::set<std::string> seen;
    for (const auto& n : dt_.nodes) {
      if (!is_point_id(n.id)) report(DtViolationKind::BadIdentifier, "node id '" + n.id + "'");
      if (!seen.insert(n.id).second) report(DtViolationKind::DuplicateNode, n.id);
    }
    for (const auto& a : dt_.event_arcs)
      if (!is_identifier(a.event))
        report(DtViolationKind::BadIdentifier, "event '" + a.event + "' on " + a.from);
    std::map<std::string, int> owners;
    for (const auto& v : dt_.variables) {
      if (!is_identifier(v.name)) report(DtViolationKind::BadIdentifier, "variable '" + v.name + "'");
      std::set<std::string> local;
      for (const auto& s : v.states) {
        if (!is_identifier(s)) report(DtViolationKind::BadIdentifier, "state '" + s + "'");
        if (local.insert(s).second) ++owners[s];
        else report(DtViolationKind::StateOwnershipViolation, s + " listed twice in " + v.name);
      }
    }
    for (const auto& [s, n] : owners)
      if (n > 1)
        report(DtViolationKind::StateOwnershipViolation,
               s + " belongs to " + std::to_string(n) + " variables");
  }

  void shape() {
    auto known = [&](const std::string& id) { return index_.contains(id); };
    if (!known(dt_.root)) {
      report(DtViolationKind::UnknownNode, "root " + dt_.root);
      shape_ok_ = false;
    }
    std::map<std::string, int> parents;
    std::map<std::string, std::vector<std::string>> children;
    auto arc = [&](const std::string& from, const std::string& to, NodeKind expected,
                   const std::string& what) {
      bool ok = true;
      for (const auto* end : {&from, &to}) {
        if (!known(*end)) {
          report(DtViolationKind::UnknownNode, what + " references " + *end);
          ok = false;
        }
      }
      if (!ok) {
        shape_ok_ = false;
        return;
      }
      if (index_.kind(from) != expected) {
        report(DtViolationKind::ArcKindMismatch,
               what + " leaves " + std::string(to_string(index_.kind(from))) + " node " + from);
        shape_ok_ = false;
      }
      ++parents[to];
      children[from].push_back(to);
    };
    for (const auto& a : dt_.event_arcs) arc(a.from, a.to, NodeKind::Decision, "event arc");
    for (const auto& a : dt_.chance_arcs) arc(a.from, a.to, NodeKind::Chance, "chance arc");

    for (const auto& n : dt_.nodes) {
      int p = parents.contains(n.id) ? parents[n.id] : 0;
      if (n.id == dt_.root && p != 0) {
        report(DtViolationKind::NotATree, "root " + n.id + " has a parent");
        shape_ok_ = false;
      }
      if (p > 1) {
        report(DtViolationKind::NotATree, n.id + " has " + std::to_string(p) + " parents");
        shape_ok_ = false;
      }
    }
    if (!known(dt_.root)) return;
    std::set<std::string> reached;
    std::set<std::string> on_stack;
    bool cycle = false;
    std::function<void(const std::string&)> visit = [&](const std::string& id) {
      if (on_stack.contains(id)) {
        cycle = true;
        return;
      }
      if (!reached.insert(id).second) return;
      on_stack.insert(id);
      for (const auto& c : children[id]) visit(c);
      on_stack.erase(id);
    };
    visit(dt_.root);
    if (cycle) {
      report(DtViolationKind::NotATree, "arcs form a cycle");
      shape_ok_ = false;
    }
    for (const auto& n : dt_.nodes) {
      if (!reached.contains(n.id)) {
        report(DtViolationKind::NotATree, n.id + " is unreachable from the root");
        shape_ok_ = false;
      }
    }

    for (const auto& n : dt_.nodes) {
      if (n.kind != NodeKind::Decision) continue;
      const auto& arcs = index_.events(n.id);
      if (arcs.empty()) report(DtViolationKind::DecisionWithoutChoice, n.id);
      for (std::size_t i = 1; i < arcs.size(); ++i)
        if (arcs[i]->event == arcs[i - 1]->event)
          report(DtViolationKind::DuplicateEvent, arcs[i]->event + " at " + n.id);
    }
  }

  bool tables() {
    bool ok = true;
    auto bad = [&](std::string detail) {
      report(DtViolationKind::TableViolation, std::move(detail));
      ok = false;
    };
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < dt_.variables.size(); ++i) {
      const auto& v = dt_.variables[i];
      if (position.contains(v.name)) bad("variable " + v.name + " declared twice");
      position.try_emplace(v.name, i);
      if (v.states.empty()) bad("variable " + v.name + " has no states");
    }
    if (!ok) return false;

    for (std::size_t i = 0; i < dt_.variables.size(); ++i) {
      const auto& v = dt_.variables[i];
      for (std::size_t r = 0; r < v.table.size(); ++r) {
        const auto& row = v.table[r];
        std::string where = v.name + " row " + std::to_string(r);
        for (const auto& [var, state] : row.given) {
          auto pos = position.find(var);
          if (pos == position.end() || pos->second >= i) {
            bad(where + " conditions on " + var + ", which is not an earlier variable");
            continue;
          }
          const auto& states = dt_.variables[pos->second].states;
          if (std::find(states.begin(), states.end(), state) == states.end())
            bad(where + " uses unknown state " + state + " of " + var);
        }
        double sum = 0.0;
        for (const auto& [state, p] : row.probs) {
          if (std::find(v.states.begin(), v.states.end(), state) == v.states.end())
            bad(where + " gives a probability to unknown state " + state);
          if (!(p >= -kTolerance && p <= 1.0 + kTolerance))
            bad(where + " probability of " + state + " is outside [0, 1]");
          sum += p;
        }
        for (const auto& s : v.states)
          if (!row.probs.contains(s)) bad(where + " has no probability for " + s);
        if (!nearly_equal(sum, 1.0)) bad(where + " sums to " + format_number(sum));
      }
    }
    if (!ok) return false;

    // Exactly one row per assignment of the earlier variables.
    for (std::size_t i = 0; i < dt_.variables.size(); ++i) {
      const auto& v = dt_.variables[i];
      std::map<std::string, std::string> earlier;
      std::function<void(std::size_t)> each = [&](std::size_t k) {
        if (k == i) {
          std::size_t matches = 0;
          matching_row(v, earlier, &matches);
          if (matches != 1) {
            std::string key;
            for (const auto& [var, s] : earlier) key += (key.empty() ? "" : ", ") + var + "=" + s;
            bad(v.name + ": " + std::to_string(matches) + " rows match {" + key + "}");
          }
          return;
        }
        for (const auto& s : dt_.variables[k].states) {
          earlier[dt_.variables[k].name] = s;
          each(k + 1);
        }
        earlier.erase(dt_.variables[k].name);
      };
      each(0);
    }
    return ok;
  }

  void chance_nodes() {
    for (const auto& n : dt_.nodes) {
      if (n.kind != NodeKind::Chance) continue;
      const auto& arcs = index_.chances(n.id);
      if (arcs.size() < 2) {
        report(DtViolationKind::ChanceArity,
               n.id + " has " + std::to_string(arcs.size()) + " outgoing arcs");
        chance_ok_ = false;
      }
      double sum = 0.0;
      std::set<const ChanceVariable*> vars;
      std::set<std::string> states;
      for (const auto* a : arcs) {
        if (index_.contains(a->to) && index_.kind(a->to) == NodeKind::Chance) {
          report(DtViolationKind::ChanceToChance, n.id + " -> " + a->to);
          chance_ok_ = false;
        }
        if (!(a->prob >= 0.0 && a->prob <= 1.0)) {
          report(DtViolationKind::ProbRange, n.id + " -> " + a->to);
          chance_ok_ = false;
        }
        sum += a->prob;
        const ChanceVariable* v = index_.owner(a->state);
        if (v == nullptr) {
          report(DtViolationKind::StateOwnershipViolation,
                 "state " + a->state + " at " + n.id + " belongs to no variable");
          chance_ok_ = false;
        } else {
          vars.insert(v);
        }
        if (!states.insert(a->state).second) {
          report(DtViolationKind::IncompleteChance, n.id + " repeats state " + a->state);
          chance_ok_ = false;
        }
      }
      if (!arcs.empty() && !nearly_equal(sum, 1.0)) {
        report(DtViolationKind::ProbSumViolation,
               n.id + " probabilities sum to " + format_number(sum));
        chance_ok_ = false;
      }
      if (vars.size() > 1) {
        report(DtViolationKind::MixedVariables, n.id + " mixes states of several variables");
        chance_ok_ = false;
      } else if (vars.size() == 1) {
        for (const auto& s : (*vars.begin())->states) {
          if (!states.contains(s)) {
            report(DtViolationKind::IncompleteChance, n.id + " has no arc for state " + s);
            chance_ok_ = false;
          }
        }
      }
    }
  }

  void terminals() {
    for (const auto& n : dt_.nodes) {
      if (n.kind != NodeKind::Terminal) continue;
      auto it = dt_.payoffs.find(n.id);
      if (it == dt_.payoffs.end() || !std::isfinite(it->second))
        report(DtViolationKind::MissingPayoff, n.id);
    }
    for (const auto& [id, _] : dt_.payoffs)
      if (!index_.contains(id) || index_.kind(id) != NodeKind::Terminal)
        report(DtViolationKind::PayoffOnNonTerminal, id);
  }

  // Every chance node carries P(state | states resolved above it).
  void consistency() {
    auto joint = joint_distribution(dt_);
    std::map<std::string, std::string> evidence;
    std::function<void(const std::string&)> walk = [&](const std::string& id) {
      if (index_.kind(id) == NodeKind::Decision) {
        for (const auto* a : index_.events(id)) walk(a->to);
        return;
      }
      if (index_.kind(id) != NodeKind::Chance) return;
      const std::string& var = index_.variable_at(id);
      for (const auto* a : index_.chances(id)) {
        auto expected = conditional(joint, var, a->state, evidence);
        if (expected && !nearly_equal(*expected, a->prob))
          report(DtViolationKind::InconsistentProbability,
                 id + " gives " + a->state + " probability " + format_exact(a->prob) +
                     ", the variable tables imply " + format_number(*expected));
        auto saved = evidence.find(var);
        std::optional<std::string> previous;
        if (saved != evidence.end()) previous = saved->second;
        evidence[var] = a->state;
        walk(a->to);
        if (previous) evidence[var] = *previous;
        else evidence.erase(var);
      }
    };
    walk(dt_.root);
  }

  const DecisionTree& dt_;
  TreeIndex index_;
  std::vector<DtViolation> out_;
  bool shape_ok_ = true;
  bool chance_ok_ = true;
};

}  // namespace

std::vector<DtViolation> validate(const DecisionTree& dt) { return Validator(dt).run(); }

}  // namespace bdi
