#include "bdi/satisfaction.hpp"

#include <algorithm>
#include <functional>

#include "bdi/desugar.hpp"
#include "overloaded.hpp"

namespace bdi {

using detail::Overloaded;

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Interpretation& m) : m_(m) {}

  bool state(const Situation& s, const StateFormula& f) const {
    const TimeTreeWorld& w = m_.world(s.world);
    if (!w.contains(s.time))
      throw ModelError("point " + s.time + " is not in world " + s.world);
    return std::visit(
        Overloaded{
            [&](const state::Prop& n) { return w.holds(s.time, n.name); },
            [&](const state::Const& n) { return n.value; },
            [&](const state::Not& n) { return !state(s, n.arg); },
            [&](const state::And& n) { return state(s, n.lhs) && state(s, n.rhs); },
            [&](const state::Or& n) { return state(s, n.lhs) || state(s, n.rhs); },
            [&](const state::Implies&) -> bool { throw not_core(); },
            [&](const state::Modal& n) { return modal(s, n); },
            [&](const state::Quantified& n) -> bool {
              if (n.quantifier != Quantifier::Optional) throw not_core();
              for (const auto& p : fullpaths(w, s.time))
                if (path(w, p.points, 0, n.arg)) return true;
              return false;
            },
            [&](const state::Prob& n) -> bool {
              if (n.cmp != Comparator::Ge && n.cmp != Comparator::Gt) throw not_core();
              double total = 0.0;
              for (const auto& t : n.terms) {
                if (t.condition) throw not_core();
                total += t.coefficient * measure(s, t.formula);
              }
              return compare(total, n.cmp, n.bound);
            },
            [&](const state::Payoff& n) -> bool {
              if (n.cmp != Comparator::Ge && n.cmp != Comparator::Gt) throw not_core();
              bool ok = true;
              each_payoff(s, n.formula, [&](double rho) {
                if (!compare(n.coefficient * rho, n.cmp, n.bound)) ok = false;
              });
              return ok;
            },
        },
        f->node);
  }

  /// Evaluates `f` on the suffix of `points` starting at `k`.
  bool path(const TimeTreeWorld& w, const std::vector<PointId>& points, std::size_t k,
            const PathFormula& f) const {
    return std::visit(
        Overloaded{
            [&](const path::State& n) { return state({w.id(), points[k]}, n.formula); },
            [&](const path::Done& n) { return finished_at(w, points[k], n.event).has_value(); },
            [&](const path::Not& n) { return !path(w, points, k, n.arg); },
            [&](const path::And& n) {
              return path(w, points, k, n.lhs) && path(w, points, k, n.rhs);
            },
            [&](const path::Or& n) {
              return path(w, points, k, n.lhs) || path(w, points, k, n.rhs);
            },
            [&](const path::Implies&) -> bool { throw not_core(); },
            [&](const path::Eventually& n) {
              for (std::size_t i = k; i < points.size(); ++i)
                if (path(w, points, i, n.arg)) return true;
              return false;
            },
        },
        f->node);
  }

  double measure(const Situation& s, const StateFormula& f) const {
    const auto& beliefs = m_.beliefs(s);
    auto dist = m_.prob.find(s);
    if (dist == m_.prob.end()) {
      if (beliefs.empty()) return 0.0;
      throw ModelError("no probability distribution at " + s.key());
    }
    double total = 0.0;
    for (const auto& b : beliefs) {
      auto weight = dist->second.find(b);
      if (weight == dist->second.end() || weight->second == 0.0) continue;
      if (state({b, s.time}, f)) total += weight->second;
    }
    return total;
  }

  void each_payoff(const Situation& s, const PathFormula& f,
                   const std::function<void(double)>& visit) const {
    for (const auto& g : m_.goals(s)) {
      const TimeTreeWorld& w = m_.world(g);
      if (!w.contains(s.time))
        throw ModelError("point " + s.time + " is not in goal world " + g);
      for (const auto& p : fullpaths(w, s.time)) {
        auto rho = w.payoff(p.points.back());
        if (!rho) continue;
        if (path(w, p.points, 0, f)) visit(*rho);
      }
    }
  }

 private:
  static ModelError not_core() {
    return ModelError("formula is not in core form; desugar it first");
  }

  bool modal(const Situation& s, const state::Modal& n) const {
    const std::vector<WorldId>* targets = nullptr;
    switch (n.attitude) {
      case Attitude::Belief: targets = &m_.beliefs(s); break;
      case Attitude::Goal: targets = &m_.goals(s); break;
      case Attitude::Intention: targets = &m_.intentions(s, n.procedure); break;
    }
    for (const auto& target : *targets) {
      if (!m_.world(target).contains(s.time))
        throw ModelError("accessible world " + target + " has no point " + s.time);
      if (!state({target, s.time}, n.arg)) return false;
    }
    return true;
  }

  /// The point where an execution of `e` ending at `t` started, if any.
  /// Time trees have a single past, so there is at most one.
  std::optional<PointId> finished_at(const TimeTreeWorld& w, const PointId& t,
                                     const EventExpr& e) const {
    return std::visit(
        Overloaded{
            [&](const event::Primitive& n) -> std::optional<PointId> {
              const Arc* in = w.incoming(t);
              if (in == nullptr || in->event != n.name) return std::nullopt;
              return in->from;
            },
            [&](const event::Test& n) -> std::optional<PointId> {
              if (!state({w.id(), t}, n.formula)) return std::nullopt;
              return t;
            },
            [&](const event::Sequence& n) -> std::optional<PointId> {
              auto mid = finished_at(w, t, n.second);
              if (!mid) return std::nullopt;
              return finished_at(w, *mid, n.first);
            },
        },
        e->node);
  }

  const Interpretation& m_;
};

void require_core(const StateFormula& f) {
  if (!is_core(f)) throw ModelError("formula is not in core form; desugar it first");
}
void require_core(const PathFormula& f) {
  if (!is_core(f)) throw ModelError("formula is not in core form; desugar it first");
}

}  // namespace

bool holds_state(const Interpretation& m, const Situation& s, const StateFormula& f) {
  require_core(f);
  return Evaluator(m).state(s, f);
}

bool holds_path(const Interpretation& m, const Fullpath& p, const PathFormula& f) {
  require_core(f);
  if (p.points.empty()) throw ModelError("empty path");
  const TimeTreeWorld& w = m.world(p.world);
  for (const auto& t : p.points)
    if (!w.contains(t)) throw ModelError("point " + t + " is not in world " + p.world);
  return Evaluator(m).path(w, p.points, 0, f);
}

bool check(const Interpretation& m, const Situation& s, const StateFormula& f) {
  return holds_state(m, s, desugar(f));
}

double prob_measure(const Interpretation& m, const Situation& s, const StateFormula& f) {
  require_core(f);
  if (!m.has_situation(s)) throw ModelError("unknown situation " + s.key());
  return Evaluator(m).measure(s, f);
}

std::optional<PayoffRange> payoff_range(const Interpretation& m, const Situation& s,
                                        const PathFormula& f) {
  require_core(f);
  if (!m.has_situation(s)) throw ModelError("unknown situation " + s.key());
  std::optional<PayoffRange> out;
  Evaluator(m).each_payoff(s, f, [&](double rho) {
    if (!out)
      out = PayoffRange{rho, rho};
    else
      out = PayoffRange{std::min(out->min, rho), std::max(out->max, rho)};
  });
  return out;
}

}  // namespace bdi
