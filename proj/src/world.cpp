#include "bdi/world.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "bdi/common.hpp"

namespace bdi {

TimeTreeWorld::TimeTreeWorld(WorldId id, std::vector<PointId> points, std::vector<Arc> arcs,
                             std::map<PointId, std::set<std::string>> valuation,
                             std::map<PointId, double> leaf_payoffs)
    : id_(std::move(id)),
      points_(std::move(points)),
      arcs_(std::move(arcs)),
      valuation_(std::move(valuation)),
      leaf_payoffs_(std::move(leaf_payoffs)) {
  for (const auto& p : points_) index_.try_emplace(p);
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    auto from = index_.find(a.from);
    auto to = index_.find(a.to);
    if (from == index_.end() || to == index_.end()) continue;
    from->second.outgoing.push_back(a);
    if (!to->second.incoming) to->second.incoming = i;
  }
  for (auto& [_, node] : index_) {
    std::sort(node.outgoing.begin(), node.outgoing.end(), [](const Arc& a, const Arc& b) {
      return std::tie(a.event, a.to) < std::tie(b.event, b.to);
    });
  }
  for (const auto& p : points_) {
    if (!index_.at(p).incoming) {
      root_ = p;
      break;
    }
  }
}

const std::set<std::string>& TimeTreeWorld::true_at(const PointId& t) const {
  static const std::set<std::string> kEmpty;
  auto it = valuation_.find(t);
  return it == valuation_.end() ? kEmpty : it->second;
}

bool TimeTreeWorld::holds(const PointId& t, const std::string& proposition) const {
  return true_at(t).contains(proposition);
}

std::optional<double> TimeTreeWorld::payoff(const PointId& t) const {
  auto it = leaf_payoffs_.find(t);
  if (it == leaf_payoffs_.end()) return std::nullopt;
  return it->second;
}

const Arc* TimeTreeWorld::incoming(const PointId& t) const {
  auto it = index_.find(t);
  if (it == index_.end() || !it->second.incoming) return nullptr;
  return &arcs_[*it->second.incoming];
}

std::span<const Arc> TimeTreeWorld::outgoing(const PointId& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return {};
  return it->second.outgoing;
}

const Arc* TimeTreeWorld::successor(const PointId& t, const std::string& event) const {
  for (const auto& a : outgoing(t))
    if (a.event == event) return &a;
  return nullptr;
}

std::vector<PointId> TimeTreeWorld::history(const PointId& t) const {
  std::vector<PointId> out;
  std::set<PointId> seen{t};
  for (const Arc* a = incoming(t); a != nullptr; a = incoming(a->from)) {
    if (!seen.insert(a->from).second) break;  // cyclic input
    out.push_back(a->from);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool TimeTreeWorld::operator==(const TimeTreeWorld& other) const {
  return id_ == other.id_ && points_ == other.points_ && arcs_ == other.arcs_ &&
         valuation_ == other.valuation_ && leaf_payoffs_ == other.leaf_payoffs_;
}

std::string_view to_string(WorldViolationKind kind) {
  switch (kind) {
    case WorldViolationKind::EmptyWorld: return "EmptyWorld";
    case WorldViolationKind::DuplicatePoint: return "DuplicatePoint";
    case WorldViolationKind::UnknownPoint: return "UnknownPoint";
    case WorldViolationKind::EmptyEvent: return "EmptyEvent";
    case WorldViolationKind::NoSingleRoot: return "NoSingleRoot";
    case WorldViolationKind::BackwardBranching: return "BackwardBranching";
    case WorldViolationKind::Cycle: return "Cycle";
    case WorldViolationKind::Unreachable: return "Unreachable";
    case WorldViolationKind::PayoffOnInnerPoint: return "PayoffOnInnerPoint";
  }
  return "?";
}

std::vector<WorldViolation> validate_world(const TimeTreeWorld& w) {
  std::vector<WorldViolation> out;
  auto report = [&](WorldViolationKind k, std::string detail) {
    out.push_back({k, w.id() + ": " + std::move(detail)});
  };
  if (w.points().empty()) {
    report(WorldViolationKind::EmptyWorld, "world has no time points");
    return out;
  }

  std::set<PointId> points;
  for (const auto& p : w.points())
    if (!points.insert(p).second) report(WorldViolationKind::DuplicatePoint, p);

  std::map<PointId, int> parents;
  std::map<PointId, std::vector<PointId>> children;
  for (const auto& a : w.arcs()) {
    bool known = true;
    for (const auto* end : {&a.from, &a.to}) {
      if (!points.contains(*end)) {
        report(WorldViolationKind::UnknownPoint, "arc references " + *end);
        known = false;
      }
    }
    if (a.event.empty()) report(WorldViolationKind::EmptyEvent, a.from + " -> " + a.to);
    if (!known) continue;
    ++parents[a.to];
    children[a.from].push_back(a.to);
  }
  for (const auto& [p, _] : w.valuation())
    if (!points.contains(p)) report(WorldViolationKind::UnknownPoint, "valuation of " + p);

  std::vector<PointId> roots;
  for (const auto& p : points) {
    int n = parents.contains(p) ? parents[p] : 0;
    if (n == 0) roots.push_back(p);
    if (n > 1) report(WorldViolationKind::BackwardBranching, p + " has " + std::to_string(n) + " parents");
  }
  if (roots.size() != 1)
    report(WorldViolationKind::NoSingleRoot, std::to_string(roots.size()) + " roots");

  // Reachability and cycles from every root.
  std::set<PointId> reached;
  std::set<PointId> on_stack;
  bool cycle = false;
  std::function<void(const PointId&)> visit = [&](const PointId& p) {
    if (on_stack.contains(p)) {
      cycle = true;
      return;
    }
    if (!reached.insert(p).second) return;
    on_stack.insert(p);
    for (const auto& c : children[p]) visit(c);
    on_stack.erase(p);
  };
  for (const auto& r : roots) visit(r);
  // A point with no root among its ancestors must sit below a cycle.
  for (const auto& p : points) {
    if (reached.contains(p)) continue;
    cycle = true;
    if (!roots.empty()) report(WorldViolationKind::Unreachable, p);
  }
  if (cycle) report(WorldViolationKind::Cycle, "arcs form a cycle");

  for (const auto& [p, _] : w.leaf_payoffs()) {
    if (!points.contains(p))
      report(WorldViolationKind::UnknownPoint, "payoff on " + p);
    else if (!children[p].empty())
      report(WorldViolationKind::PayoffOnInnerPoint, p);
  }
  return out;
}

std::vector<Fullpath> fullpaths(const TimeTreeWorld& w, const PointId& from) {
  if (!w.contains(from)) throw ModelError("point " + from + " is not in world " + w.id());
  std::vector<Fullpath> out;
  std::vector<PointId> prefix;
  std::set<PointId> on_path;
  std::function<void(const PointId&)> walk = [&](const PointId& p) {
    if (!on_path.insert(p).second) throw ModelError("cycle in world " + w.id());
    prefix.push_back(p);
    auto next = w.outgoing(p);
    if (next.empty()) out.push_back({w.id(), prefix});
    for (const auto& a : next) walk(a.to);
    prefix.pop_back();
    on_path.erase(p);
  };
  walk(from);
  return out;
}

}  // namespace bdi
