#include "bdi/transform.hpp"

#include <functional>

#include "bdi/common.hpp"
#include "json_support.hpp"

namespace bdi {

using detail::Json;

namespace {

ExtraBranch extra_of(const Json& j, const std::string& ctx, bool top) {
  detail::only_keys(j, {"at", "event", "point", "props", "children"}, ctx);
  ExtraBranch e;
  if (top) e.at = detail::string_of(detail::field(j, "at", ctx), ctx + ".at");
  e.event = detail::string_of(detail::field(j, "event", ctx), ctx + ".event");
  e.point = detail::string_of(detail::field(j, "point", ctx), ctx + ".point");
  if (j.contains("props"))
    for (const auto& p : detail::array(j["props"], ctx + ".props"))
      e.props.insert(detail::string_of(p, ctx + ".props"));
  if (j.contains("children")) {
    const Json& kids = detail::array(j["children"], ctx + ".children");
    for (std::size_t i = 0; i < kids.size(); ++i)
      e.children.push_back(extra_of(kids[i], ctx + ".children[" + std::to_string(i) + "]", false));
  }
  return e;
}

struct WorldParts {
  std::vector<PointId> points;
  std::vector<Arc> arcs;
  std::map<PointId, std::set<std::string>> valuation;
  std::map<PointId, double> payoffs;

  TimeTreeWorld build(const WorldId& id) const {
    std::map<PointId, std::set<std::string>> val;
    for (const auto& [p, props] : valuation)
      if (!props.empty()) val[p] = props;
    return TimeTreeWorld(id, points, arcs, std::move(val), payoffs);
  }
};

WorldParts resolve_parts(const DecisionTree& dt, const JointAssignment& a) {
  TreeIndex index(dt);
  WorldParts w;
  auto state_for = [&](const std::string& chance) -> const ChanceArc* {
    const std::string& var = index.variable_at(chance);
    auto it = a.assignment.find(var);
    if (it == a.assignment.end())
      throw ModelError("assignment has no state for variable '" + var + "'");
    for (const auto* arc : index.chances(chance))
      if (arc->state == it->second) return arc;
    throw ModelError("chance node " + chance + " has no arc for state " + it->second);
  };

  // `node` is a decision or terminal node, materialised as point `point`.
  std::function<void(const std::string&, const PointId&, const std::set<std::string>&)> place =
      [&](const std::string& node, const PointId& point, const std::set<std::string>& props) {
        w.points.push_back(point);
        w.valuation[point] = props;
        if (index.kind(node) == NodeKind::Terminal) {
          w.payoffs[point] = index.payoff(node);
          return;
        }
        for (const auto* e : index.events(node)) {
          std::string target = e->to;
          std::set<std::string> next = props;
          if (index.kind(target) == NodeKind::Chance) {
            const ChanceArc* c = state_for(target);
            next.insert(c->state);
            target = c->to;
          }
          w.arcs.push_back({point, target, e->event});
          place(target, target, next);
        }
      };

  if (index.kind(dt.root) == NodeKind::Chance) {
    const ChanceArc* c = state_for(dt.root);
    place(c->to, dt.root, {c->state});
  } else {
    place(dt.root, dt.root, {});
  }
  return w;
}

void graft(WorldParts& w, const ExtraBranch& e, const PointId& at) {
  for (const auto& a : w.arcs)
    if (a.from == at && a.event == e.event)
      throw ModelError("extra branch reuses event " + e.event + " at " + at);
  for (const auto& p : w.points)
    if (p == e.point) throw ModelError("extra branch point " + e.point + " already exists");
  std::set<std::string> props = w.valuation[at];
  props.insert(e.props.begin(), e.props.end());
  w.points.push_back(e.point);
  w.valuation[e.point] = props;
  w.arcs.push_back({at, e.point, e.event});
  for (const auto& child : e.children) graft(w, child, e.point);
}

}  // namespace

std::vector<ExtraBranch> parse_extras(const std::string& text) {
  Json j = detail::parse_json(text);
  detail::array(j, "extras");
  std::vector<ExtraBranch> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(extra_of(j[i], "extras[" + std::to_string(i) + "]", true));
  return out;
}

std::vector<ExtraBranch> load_extras(const std::string& path) {
  return parse_extras(read_file(path));
}

std::vector<JointAssignment> enumerate_assignments(const DecisionTree& dt) {
  return joint_distribution(dt);
}

std::string assignment_suffix(const DecisionTree& dt, const JointAssignment& a) {
  std::string out;
  for (const auto& v : dt.variables) {
    auto it = a.assignment.find(v.name);
    if (it == a.assignment.end()) continue;
    if (!out.empty()) out += "_";
    out += it->second;
  }
  return out;
}

WorldId goal_world_id(const DecisionTree& dt, const JointAssignment& a) {
  std::string suffix = assignment_suffix(dt, a);
  return suffix.empty() ? "g" : "g_" + suffix;
}

WorldId belief_world_id(const DecisionTree& dt, const JointAssignment& a) {
  std::string suffix = assignment_suffix(dt, a);
  return suffix.empty() ? "b" : "b_" + suffix;
}

PointId point_id_for(const DecisionTree& dt, const std::string& node) {
  TreeIndex index(dt);
  if (index.kind(dt.root) == NodeKind::Chance && index.parent(node) == dt.root) return dt.root;
  return node;
}

TimeTreeWorld resolve(const DecisionTree& dt, const JointAssignment& a, const WorldId& id) {
  return resolve_parts(dt, a).build(id);
}

TransformResult transform(const DecisionTree& dt, const std::vector<ExtraBranch>& extras) {
  TransformResult r;
  Interpretation& m = r.interpretation;
  for (const auto& a : dt.event_arcs) m.events.insert(a.event);

  std::function<void(const ExtraBranch&)> note_events = [&](const ExtraBranch& e) {
    m.events.insert(e.event);
    for (const auto& c : e.children) note_events(c);
  };
  for (const auto& e : extras) note_events(e);
  std::vector<bool> attached(extras.size(), false);

  Distribution mu;
  double best = -1.0;
  for (const auto& a : enumerate_assignments(dt)) {
    WorldParts parts = resolve_parts(dt, a);
    WorldId g = goal_world_id(dt, a);
    WorldId b = belief_world_id(dt, a);
    m.worlds.emplace(g, parts.build(g));
    for (std::size_t i = 0; i < extras.size(); ++i) {
      const auto& at = extras[i].at;
      if (std::find(parts.points.begin(), parts.points.end(), at) == parts.points.end()) continue;
      graft(parts, extras[i], at);
      attached[i] = true;
    }
    m.worlds.emplace(b, parts.build(b));
    r.world_index[g] = a;
    r.world_index[b] = a;
    r.goal_worlds.push_back(g);
    r.belief_worlds.push_back(b);
    mu[b] = a.prob;
    if (a.prob > best) {
      best = a.prob;
      m.designated = {b, dt.root};
    }
  }
  for (std::size_t i = 0; i < extras.size(); ++i)
    if (!attached[i]) throw ModelError("extra branch attaches at unknown point " + extras[i].at);

  std::vector<WorldId> goals = r.goal_worlds;
  std::vector<WorldId> beliefs = r.belief_worlds;
  std::sort(goals.begin(), goals.end());
  std::sort(beliefs.begin(), beliefs.end());
  for (const auto& [id, _] : m.worlds) {
    Situation s{id, dt.root};
    m.belief[s] = beliefs;
    m.goal[s] = goals;
    m.prob[s] = mu;
  }
  return r;
}

}  // namespace bdi
