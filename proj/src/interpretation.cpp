#include "bdi/interpretation.hpp"

#include <algorithm>

namespace bdi {

Situation parse_situation(const std::string& key) {
  auto at = key.find('@');
  if (at == std::string::npos || at == 0 || at + 1 == key.size() ||
      key.find('@', at + 1) != std::string::npos)
    throw ParseError("malformed situation '" + key + "' (expected world@point)");
  return {key.substr(0, at), key.substr(at + 1)};
}

const TimeTreeWorld& Interpretation::world(const WorldId& id) const {
  auto it = worlds.find(id);
  if (it == worlds.end()) throw ModelError("unknown world " + id);
  return it->second;
}

bool Interpretation::has_situation(const Situation& s) const {
  auto it = worlds.find(s.world);
  return it != worlds.end() && it->second.contains(s.time);
}

const std::vector<WorldId>& Interpretation::accessible(const Relation& r,
                                                       const Situation& s) const {
  static const std::vector<WorldId> kNone;
  auto it = r.find(s);
  return it == r.end() ? kNone : it->second;
}

const std::vector<WorldId>& Interpretation::intentions(const Situation& s,
                                                       std::optional<Procedure> procedure) const {
  if (!procedure) return accessible(intention, s);
  auto it = intention_by.find(*procedure);
  if (it == intention_by.end())
    throw ModelError("no intention relation for procedure " +
                     std::string(to_string(*procedure)));
  return accessible(it->second, s);
}

std::vector<InterpretationIssue> validate_interpretation(const Interpretation& m) {
  std::vector<InterpretationIssue> out;
  for (const auto& [id, w] : m.worlds) {
    if (id != w.id()) out.push_back({"world key " + id + " holds world " + w.id()});
    for (const auto& v : validate_world(w))
      out.push_back({std::string(to_string(v.kind)) + " " + v.detail});
  }

  auto check_relation = [&](const std::string& name, const Relation& r) {
    for (const auto& [s, targets] : r) {
      if (!m.has_situation(s)) out.push_back({name + ": unknown situation " + s.key()});
      for (const auto& w : targets)
        if (!m.worlds.contains(w))
          out.push_back({name + " at " + s.key() + ": unknown world " + w});
    }
  };
  check_relation("belief", m.belief);
  check_relation("goal", m.goal);
  check_relation("intention", m.intention);
  for (const auto& [proc, r] : m.intention_by)
    check_relation("intention[" + std::string(to_string(proc)) + "]", r);

  for (const auto& [s, dist] : m.prob) {
    if (!m.has_situation(s)) out.push_back({"prob: unknown situation " + s.key()});
    const auto& beliefs = m.beliefs(s);
    for (const auto& [w, weight] : dist) {
      if (!m.worlds.contains(w)) out.push_back({"prob at " + s.key() + ": unknown world " + w});
      if (!(weight >= 0.0))
        out.push_back({"prob at " + s.key() + ": negative weight on " + w});
      if (weight > 0.0 && std::find(beliefs.begin(), beliefs.end(), w) == beliefs.end())
        out.push_back({"prob at " + s.key() + ": " + w + " is not belief-accessible"});
    }
  }
  if (!m.has_situation(m.designated))
    out.push_back({"designated situation " + m.designated.key() + " does not exist"});
  return out;
}

bool is_subworld(const TimeTreeWorld& sub, const TimeTreeWorld& sup, const PointId& at) {
  if (!sub.contains(at) || !sup.contains(at))
    throw ModelError("point " + at + " is missing from " + sub.id() + " or " + sup.id());

  std::set<PointId> sub_points(sub.points().begin(), sub.points().end());
  for (const auto& p : sub_points) {
    if (!sup.contains(p)) return false;
    if (sub.true_at(p) != sup.true_at(p)) return false;
    if (sub.payoff(p) != sup.payoff(p)) return false;
  }
  // Every arc of sub exists in sup with the same event, and every arc of
  // sup between retained points is kept.
  for (const auto& a : sub.arcs()) {
    const Arc* b = sup.successor(a.from, a.event);
    if (b == nullptr || b->to != a.to) return false;
  }
  for (const auto& a : sup.arcs()) {
    if (!sub_points.contains(a.from) || !sub_points.contains(a.to)) continue;
    const Arc* b = sub.successor(a.from, a.event);
    if (b == nullptr || b->to != a.to) return false;
  }
  // Shared history: the same chain of ancestors in both worlds.
  if (sub.history(at) != sup.history(at)) return false;
  const Arc* a = sub.incoming(at);
  const Arc* b = sup.incoming(at);
  if ((a == nullptr) != (b == nullptr)) return false;
  return a == nullptr || *a == *b;
}

bool is_subworld(const WorldId& sub, const WorldId& sup, const PointId& at,
                 const Interpretation& m) {
  return is_subworld(m.world(sub), m.world(sup), at);
}

}  // namespace bdi
