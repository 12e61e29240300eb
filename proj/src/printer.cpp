#include "bdi/printer.hpp"

#include <ostream>

#include "overloaded.hpp"

namespace bdi {

using detail::Overloaded;

namespace {

// Binding strength; a subformula printed where a stronger level is
// required gets parentheses.
enum Level { kImplies = 0, kOr = 1, kAnd = 2, kAtom = 3 };

std::string paren_if(bool wrap, std::string s) { return wrap ? "(" + s + ")" : s; }

std::string state_text(const StateFormula& f, int min_level);
std::string path_text(const PathFormula& p, int min_level);
std::string event_text(const EventExpr& e);

int level_of(const StateFormula& f) {
  return std::visit(Overloaded{
                        [](const state::Implies&) { return int(kImplies); },
                        [](const state::Or&) { return int(kOr); },
                        [](const state::And&) { return int(kAnd); },
                        [](const auto&) { return int(kAtom); },
                    },
                    f->node);
}

std::string attitude_name(Attitude a) {
  switch (a) {
    case Attitude::Belief: return "BEL";
    case Attitude::Goal: return "GOAL";
    case Attitude::Intention: return "INTEND";
  }
  return "?";
}

std::string binary(const std::string& lhs, const char* op, const std::string& rhs) {
  return lhs + " " + op + " " + rhs;
}

std::string prob_text(const state::Prob& p) {
  std::string out;
  bool first = true;
  for (const auto& term : p.terms) {
    double c = term.coefficient;
    if (first) {
      if (c != 1.0) out += format_exact(c) + "*";
    } else {
      out += c < 0 ? " - " : " + ";
      out += format_exact(c < 0 ? -c : c) + "*";
    }
    first = false;
    // A top-level `|` inside PROB( ) is the conditioning bar.
    out += "PROB(" + state_text(term.formula, kAnd);
    if (term.condition) out += " | " + state_text(term.condition, kImplies);
    out += ")";
  }
  out += " ";
  out += to_string(p.cmp);
  out += " " + format_exact(p.bound);
  return out;
}

std::string state_text(const StateFormula& f, int min_level) {
  std::string text = std::visit(
      Overloaded{
          [](const state::Prop& n) { return n.name; },
          [](const state::Const& n) { return std::string(n.value ? "true" : "false"); },
          [](const state::Not& n) { return "~" + state_text(n.arg, kAtom); },
          [](const state::And& n) {
            return binary(state_text(n.lhs, kAnd), "&", state_text(n.rhs, kAtom));
          },
          [](const state::Or& n) {
            return binary(state_text(n.lhs, kOr), "|", state_text(n.rhs, kAnd));
          },
          [](const state::Implies& n) {
            return binary(state_text(n.lhs, kOr), "->", state_text(n.rhs, kImplies));
          },
          [](const state::Modal& n) {
            std::string head = attitude_name(n.attitude);
            if (n.procedure) head += "[" + std::string(to_string(*n.procedure)) + "]";
            return head + "(" + state_text(n.arg, kImplies) + ")";
          },
          [](const state::Quantified& n) {
            std::string head = n.quantifier == Quantifier::Optional ? "OPTIONAL" : "INEVITABLE";
            return head + "(" + path_text(n.arg, kImplies) + ")";
          },
          [](const state::Prob& n) { return prob_text(n); },
          [](const state::Payoff& n) {
            std::string out;
            if (n.coefficient != 1.0) out += format_exact(n.coefficient) + "*";
            out += "PAYOFF(" + path_text(n.formula, kImplies) + ") ";
            out += to_string(n.cmp);
            out += " " + format_exact(n.bound);
            return out;
          },
      },
      f->node);
  return paren_if(level_of(f) < min_level, std::move(text));
}

int level_of(const PathFormula& p) {
  return std::visit(Overloaded{
                        [](const path::State& n) { return level_of(n.formula); },
                        [](const path::Implies&) { return int(kImplies); },
                        [](const path::Or&) { return int(kOr); },
                        [](const path::And&) { return int(kAnd); },
                        [](const auto&) { return int(kAtom); },
                    },
                    p->node);
}

/// For ~<>~x returns x (as text at atom level), the operand of [].
std::optional<std::string> box_operand(const path::Not& n) {
  const auto* ev = std::get_if<path::Eventually>(&n.arg->node);
  if (!ev) return std::nullopt;
  if (const auto* inner = std::get_if<path::Not>(&ev->arg->node))
    return path_text(inner->arg, kAtom);
  if (auto s = state_of(ev->arg))
    if (const auto* sn = std::get_if<state::Not>(&s->node)) return state_text(sn->arg, kAtom);
  return std::nullopt;
}

std::string path_text(const PathFormula& p, int min_level) {
  if (const auto* s = std::get_if<path::State>(&p->node)) return state_text(s->formula, min_level);
  std::string text = std::visit(
      Overloaded{
          [](const path::State&) { return std::string(); },
          [](const path::Done& n) { return "done(" + event_text(n.event) + ")"; },
          [](const path::Not& n) {
            if (auto operand = box_operand(n)) return "[] " + *operand;
            return "~" + path_text(n.arg, kAtom);
          },
          [](const path::And& n) {
            return binary(path_text(n.lhs, kAnd), "&", path_text(n.rhs, kAtom));
          },
          [](const path::Or& n) {
            return binary(path_text(n.lhs, kOr), "|", path_text(n.rhs, kAnd));
          },
          [](const path::Implies& n) {
            return binary(path_text(n.lhs, kOr), "->", path_text(n.rhs, kImplies));
          },
          [](const path::Eventually& n) { return "<> " + path_text(n.arg, kAtom); },
      },
      p->node);
  return paren_if(level_of(p) < min_level, std::move(text));
}

std::string event_text(const EventExpr& e) {
  return std::visit(Overloaded{
                        [](const event::Primitive& n) { return n.name; },
                        [](const event::Sequence& n) {
                          std::string rhs = event_text(n.second);
                          if (std::holds_alternative<event::Sequence>(n.second->node))
                            rhs = "(" + rhs + ")";
                          return event_text(n.first) + "; " + rhs;
                        },
                        [](const event::Test& n) { return "?" + state_text(n.formula, kAtom); },
                    },
                    e->node);
}

}  // namespace

std::string render(const StateFormula& f) { return state_text(f, kImplies); }
std::string render(const PathFormula& p) { return path_text(p, kImplies); }
std::string render(const EventExpr& e) { return event_text(e); }
std::string render(const AnyFormula& f) {
  return std::visit([](const auto& x) { return render(x); }, f);
}

std::ostream& operator<<(std::ostream& os, const StateFormula& f) { return os << render(f); }
std::ostream& operator<<(std::ostream& os, const PathFormula& p) { return os << render(p); }
std::ostream& operator<<(std::ostream& os, const EventExpr& e) { return os << render(e); }

}  // namespace bdi
