#include "bdi/conditions.hpp"

#include <cmath>

namespace bdi {

namespace {

bool same_distribution(const Distribution& a, const Distribution& b) {
  auto weight = [](const Distribution& d, const WorldId& w) {
    auto it = d.find(w);
    return it == d.end() ? 0.0 : it->second;
  };
  for (const auto& [w, p] : a)
    if (!nearly_equal(p, weight(b, w))) return false;
  for (const auto& [w, p] : b)
    if (!nearly_equal(p, weight(a, w))) return false;
  return true;
}

// Strong realism between an outer set (beliefs or goals) and an inner set
// (goals or intentions).
void realism(const Interpretation& m, const PointId& t, const std::vector<WorldId>& outer,
             const std::vector<WorldId>& inner, RealismDirection direction,
             ConditionResult& out) {
  auto sub = [&](const WorldId& a, const WorldId& b) {
    const auto& wa = m.world(a);
    const auto& wb = m.world(b);
    return wa.contains(t) && wb.contains(t) && is_subworld(wa, wb, t);
  };
  for (const auto& o : outer) {
    bool found = false;
    for (const auto& i : inner) found = found || sub(i, o);
    if (!found) out.offenders.push_back(o);
  }
  for (const auto& i : inner) {
    bool found = false;
    for (const auto& o : outer)
      found = found || (direction == RealismDirection::Prose ? sub(i, o) : sub(o, i));
    if (!found) out.offenders.push_back(i);
  }
}

}  // namespace

ConditionReport check_conditions(const Interpretation& m, const Situation& s,
                                 const ConditionOptions& options) {
  if (!m.has_situation(s)) throw ModelError("unknown situation " + s.key());
  ConditionReport r;
  const auto& beliefs = m.beliefs(s);

  auto own = m.prob.find(s);
  for (const auto& b : beliefs) {
    auto other = m.prob.find(Situation{b, s.time});
    if (other == m.prob.end() || own == m.prob.end()) continue;
    if (!same_distribution(own->second, other->second)) r.c1.offenders.push_back(b);
  }

  if (own == m.prob.end()) {
    if (!beliefs.empty()) r.c2.offenders.push_back(s.key());
  } else {
    double total = 0.0;
    for (const auto& b : beliefs) {
      auto it = own->second.find(b);
      if (it != own->second.end()) total += it->second;
    }
    if (!nearly_equal(total, 1.0)) r.c2.offenders.push_back(s.key());
  }

  realism(m, s.time, beliefs, m.goals(s), options.direction, r.c3);
  realism(m, s.time, m.goals(s), m.intentions(s, options.procedure), options.direction, r.c4);
  return r;
}

}  // namespace bdi
