#include "bdi/parser.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <vector>

namespace bdi {

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Not,
  And,
  Or,
  Arrow,
  Diamond,
  Box,
  Semi,
  Question,
  Star,
  Plus,
  Minus,
  Ge,
  Gt,
  Le,
  Lt,
  Eq,
  End,
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Diamond: return "'<>'";
    case Tok::Box: return "'[]'";
    case Tok::Semi: return "';'";
    case Tok::Question: return "'?'";
    case Tok::Star: return "'*'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Ge: return "'>='";
    case Tok::Gt: return "'>'";
    case Tok::Le: return "'<='";
    case Tok::Lt: return "'<'";
    case Tok::Eq: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Pos {
  int line = 1;
  int column = 1;
};

struct Token {
  Tok kind;
  std::string text;
  Pos pos;
};

constexpr std::array<std::string_view, 10> kKeywords = {
    "true", "false", "BEL", "GOAL", "INTEND", "OPTIONAL", "INEVITABLE", "PROB", "PAYOFF", "done"};

bool is_keyword(std::string_view s) {
  for (auto k : kKeywords)
    if (k == s) return true;
  return false;
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  Pos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
      ++i;
    }
  };
  auto peek = [&](std::size_t off) -> char { return i + off < text.size() ? text[i + off] : '\0'; };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Pos start = pos;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '.') {
        ++j;
        if (j >= text.size() || !std::isdigit(static_cast<unsigned char>(text[j])))
          throw ParseError("malformed number", start.line, start.column);
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
          j = k;
        }
      }
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), start});
      advance(j - i);
      continue;
    }
    auto single = [&](Tok t, std::size_t n) {
      out.push_back({t, std::string(text.substr(i, n)), start});
      advance(n);
    };
    switch (c) {
      case '(': single(Tok::LParen, 1); break;
      case ')': single(Tok::RParen, 1); break;
      case '[':
        if (peek(1) == ']')
          single(Tok::Box, 2);
        else
          single(Tok::LBracket, 1);
        break;
      case ']': single(Tok::RBracket, 1); break;
      case '~': single(Tok::Not, 1); break;
      case '&': single(Tok::And, 1); break;
      case '|': single(Tok::Or, 1); break;
      case ';': single(Tok::Semi, 1); break;
      case '?': single(Tok::Question, 1); break;
      case '*': single(Tok::Star, 1); break;
      case '+': single(Tok::Plus, 1); break;
      case '=': single(Tok::Eq, 1); break;
      case '-':
        if (peek(1) == '>')
          single(Tok::Arrow, 2);
        else
          single(Tok::Minus, 1);
        break;
      case '<':
        if (peek(1) == '>')
          single(Tok::Diamond, 2);
        else if (peek(1) == '=')
          single(Tok::Le, 2);
        else
          single(Tok::Lt, 1);
        break;
      case '>':
        if (peek(1) == '=')
          single(Tok::Ge, 2);
        else
          single(Tok::Gt, 1);
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start.line,
                         start.column);
    }
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

/// A parsed subformula of either sort. When `formula` is not an embedded
/// state formula, `path_pos` points at the first path-only construct.
struct Parsed {
  PathFormula formula;
  Pos path_pos;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  StateFormula state_document() {
    auto p = formula(false);
    expect_end();
    return require_state(p);
  }

  PathFormula path_document() {
    auto p = formula(false);
    expect_end();
    return p.formula;
  }

  EventExpr event_document() {
    auto e = event_expr();
    expect_end();
    return e;
  }

 private:
  const Token& peek() const { return tokens_[index_]; }
  bool at(Tok t) const { return peek().kind == t; }
  bool at_keyword(std::string_view kw) const { return at(Tok::Ident) && peek().text == kw; }

  const Token& take() { return tokens_[index_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const auto& t = peek();
    std::string found = t.kind == Tok::End ? std::string(describe(t.kind))
                                           : std::string(describe(t.kind)) + " '" + t.text + "'";
    throw ParseError("expected " + expected + ", found " + found, t.pos.line, t.pos.column);
  }

  const Token& expect(Tok t) {
    if (!at(t)) fail(std::string(describe(t)));
    return take();
  }

  void expect_end() {
    if (!at(Tok::End)) fail("end of input");
  }

  static StateFormula require_state(const Parsed& p) {
    if (auto s = state_of(p.formula)) return s;
    throw ParseError(
        "path formula in state position (done, <> and [] must appear under OPTIONAL, "
        "INEVITABLE or PAYOFF)",
        p.path_pos.line, p.path_pos.column);
  }

  static Parsed combine(PathFormula f, const Parsed& a, const Parsed& b) {
    Pos pos = state_of(a.formula) ? b.path_pos : a.path_pos;
    return {std::move(f), pos};
  }

  // formula := or ['->' formula]
  Parsed formula(bool bar_stop) {
    auto lhs = disjunction(bar_stop);
    if (at(Tok::Arrow)) {
      take();
      auto rhs = formula(bar_stop);
      return combine(implies(lhs.formula, rhs.formula), lhs, rhs);
    }
    return lhs;
  }

  Parsed disjunction(bool bar_stop) {
    auto lhs = conjunction();
    while (!bar_stop && at(Tok::Or)) {
      take();
      auto rhs = conjunction();
      lhs = combine(disj(lhs.formula, rhs.formula), lhs, rhs);
    }
    return lhs;
  }

  Parsed conjunction() {
    auto lhs = unary();
    while (at(Tok::And)) {
      take();
      auto rhs = unary();
      lhs = combine(conj(lhs.formula, rhs.formula), lhs, rhs);
    }
    return lhs;
  }

  Parsed unary() {
    Pos pos = peek().pos;
    if (at(Tok::Not)) {
      take();
      auto arg = unary();
      return {neg(arg.formula), arg.path_pos};
    }
    if (at(Tok::Diamond)) {
      take();
      auto arg = unary();
      return {eventually(arg.formula), pos};
    }
    if (at(Tok::Box)) {
      take();
      auto arg = unary();
      return {always(arg.formula), pos};
    }
    return primary();
  }

  StateFormula parenthesized_state() {
    expect(Tok::LParen);
    auto inner = formula(false);
    expect(Tok::RParen);
    return require_state(inner);
  }

  PathFormula parenthesized_path() {
    expect(Tok::LParen);
    auto inner = formula(false);
    expect(Tok::RParen);
    return inner.formula;
  }

  Parsed state_result(StateFormula f) { return {as_path(std::move(f)), {}}; }

  Parsed primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        take();
        auto inner = formula(false);
        expect(Tok::RParen);
        return inner;
      }
      case Tok::Number:
      case Tok::Minus: return state_result(constraint());
      case Tok::Ident: break;
      default: fail("formula");
    }

    Pos pos = t.pos;
    const std::string& word = t.text;
    if (word == "true" || word == "false") {
      take();
      return state_result(constant(word == "true"));
    }
    if (word == "PROB" || word == "PAYOFF") return state_result(constraint());
    if (word == "BEL" || word == "GOAL") {
      take();
      auto attitude = word == "BEL" ? Attitude::Belief : Attitude::Goal;
      return state_result(modal(attitude, parenthesized_state()));
    }
    if (word == "INTEND") {
      take();
      std::optional<Procedure> procedure;
      if (at(Tok::LBracket)) {
        take();
        if (!at(Tok::Ident)) fail("procedure name (maximin or maxexpval)");
        procedure = parse_procedure(peek().text);
        if (!procedure) fail("procedure name (maximin or maxexpval)");
        take();
        expect(Tok::RBracket);
      }
      return state_result(intend(parenthesized_state(), procedure));
    }
    if (word == "OPTIONAL" || word == "INEVITABLE") {
      take();
      auto arg = parenthesized_path();
      return state_result(word == "OPTIONAL" ? optional(arg) : inevitable(arg));
    }
    if (word == "done") {
      take();
      expect(Tok::LParen);
      auto e = event_expr();
      expect(Tok::RParen);
      return {done(e), pos};
    }
    take();
    return state_result(prop(word));
  }

  // event := atom { ';' atom }
  EventExpr event_expr() {
    auto lhs = event_atom();
    while (at(Tok::Semi)) {
      take();
      lhs = sequence(lhs, event_atom());
    }
    return lhs;
  }

  EventExpr event_atom() {
    if (at(Tok::Question)) {
      take();
      return test(require_state(formula(false)));
    }
    if (at(Tok::LParen)) {
      take();
      auto inner = event_expr();
      expect(Tok::RParen);
      return inner;
    }
    if (at(Tok::Ident) && !is_keyword(peek().text)) return primitive(take().text);
    fail("event name, '?' test or '('");
  }

  double number() {
    const Token& t = expect(Tok::Number);
    auto v = parse_number(t.text);
    if (!v) throw ParseError("malformed number '" + t.text + "'", t.pos.line, t.pos.column);
    return *v;
  }

  double signed_number() {
    double sign = 1.0;
    if (at(Tok::Minus)) {
      take();
      sign = -1.0;
    }
    if (!at(Tok::Number)) fail("number");
    return sign * number();
  }

  std::optional<Comparator> comparator() {
    switch (peek().kind) {
      case Tok::Ge: take(); return Comparator::Ge;
      case Tok::Gt: take(); return Comparator::Gt;
      case Tok::Le: take(); return Comparator::Le;
      case Tok::Lt: take(); return Comparator::Lt;
      case Tok::Eq: take(); return Comparator::Eq;
      default: return std::nullopt;
    }
  }

  // constraint := term { (+|-) term } CMP signed-number
  // term       := [-] [number '*'] (PROB(f [| g]) | PAYOFF(p))
  StateFormula constraint() {
    Pos start = peek().pos;
    std::vector<state::ProbTerm> terms;
    std::optional<std::pair<double, PathFormula>> payoff_term;

    auto parse_term = [&](double sign) {
      Pos term_pos = peek().pos;
      if (at(Tok::Minus)) {
        take();
        sign = -sign;
      }
      double coefficient = sign;
      bool explicit_coefficient = false;
      if (at(Tok::Number)) {
        coefficient *= number();
        expect(Tok::Star);
        explicit_coefficient = true;
      }
      if (at_keyword("PROB")) {
        if (payoff_term)
          throw ParseError("PROB and PAYOFF terms cannot be mixed", term_pos.line,
                           term_pos.column);
        take();
        expect(Tok::LParen);
        auto f = require_state(formula(true));
        StateFormula condition;
        if (at(Tok::Or)) {
          take();
          condition = require_state(formula(false));
        }
        expect(Tok::RParen);
        terms.push_back({coefficient, std::move(f), std::move(condition)});
        return;
      }
      if (at_keyword("PAYOFF")) {
        if (!terms.empty() || payoff_term)
          throw ParseError("linear combinations of PAYOFF terms are not supported",
                           term_pos.line, term_pos.column);
        take();
        payoff_term.emplace(coefficient, parenthesized_path());
        return;
      }
      fail(explicit_coefficient ? "PROB or PAYOFF after coefficient" : "PROB or PAYOFF");
    };

    parse_term(1.0);
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Pos op_pos = peek().pos;
      double sign = take().kind == Tok::Plus ? 1.0 : -1.0;
      if (payoff_term)
        throw ParseError("linear combinations of PAYOFF terms are not supported", op_pos.line,
                         op_pos.column);
      parse_term(sign);
    }
    auto cmp = comparator();
    if (!cmp) fail("comparator (>=, >, <=, <, =)");
    double bound = signed_number();

    if (payoff_term) return payoff(payoff_term->second, *cmp, bound, payoff_term->first);
    if (terms.size() > 1) {
      for (const auto& t : terms)
        if (t.condition)
          throw ParseError(
              "conditional PROB terms cannot appear in a linear combination", start.line,
              start.column);
    }
    return prob(std::move(terms), *cmp, bound);
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

}  // namespace

StateFormula parse_state_formula(std::string_view text) { return Parser(text).state_document(); }
PathFormula parse_path_formula(std::string_view text) { return Parser(text).path_document(); }
EventExpr parse_event(std::string_view text) { return Parser(text).event_document(); }

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return !is_keyword(name);
}

}  // namespace bdi
