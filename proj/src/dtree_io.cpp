#include "bdi/common.hpp"
#include "bdi/dtree.hpp"
#include "json_support.hpp"

namespace bdi {

using detail::Json;

DecisionTree parse_dtree(const std::string& text) {
  Json j = detail::parse_json(text);
  detail::only_keys(j, {"root", "nodes", "event_arcs", "chance_arcs", "payoffs", "variables"},
                    "dtree");
  DecisionTree dt;
  dt.root = detail::string_of(detail::field(j, "root", "dtree"), "root");

  const Json& nodes = detail::array(detail::field(j, "nodes", "dtree"), "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string ctx = "nodes[" + std::to_string(i) + "]";
    detail::only_keys(nodes[i], {"id", "kind"}, ctx);
    std::string id = detail::string_of(detail::field(nodes[i], "id", ctx), ctx + ".id");
    std::string kind = detail::string_of(detail::field(nodes[i], "kind", ctx), ctx + ".kind");
    auto k = parse_node_kind(kind);
    detail::expect(k.has_value(), ctx, "unknown node kind '" + kind + "'");
    dt.nodes.push_back({id, *k});
  }

  if (j.contains("event_arcs")) {
    const Json& arcs = detail::array(j["event_arcs"], "event_arcs");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      std::string ctx = "event_arcs[" + std::to_string(i) + "]";
      detail::only_keys(arcs[i], {"from", "to", "event"}, ctx);
      dt.event_arcs.push_back({detail::string_of(detail::field(arcs[i], "from", ctx), ctx),
                               detail::string_of(detail::field(arcs[i], "to", ctx), ctx),
                               detail::string_of(detail::field(arcs[i], "event", ctx), ctx)});
    }
  }

  if (j.contains("chance_arcs")) {
    const Json& arcs = detail::array(j["chance_arcs"], "chance_arcs");
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      std::string ctx = "chance_arcs[" + std::to_string(i) + "]";
      detail::only_keys(arcs[i], {"from", "to", "state", "label", "prob"}, ctx);
      ChanceArc a;
      a.from = detail::string_of(detail::field(arcs[i], "from", ctx), ctx);
      a.to = detail::string_of(detail::field(arcs[i], "to", ctx), ctx);
      a.state = detail::string_of(detail::field(arcs[i], "state", ctx), ctx);
      if (arcs[i].contains("label")) a.label = detail::string_of(arcs[i]["label"], ctx + ".label");
      a.prob = detail::decimal_of(detail::field(arcs[i], "prob", ctx), ctx + ".prob");
      dt.chance_arcs.push_back(std::move(a));
    }
  }

  if (j.contains("payoffs")) {
    for (const auto& [id, v] : detail::object(j["payoffs"], "payoffs").items())
      dt.payoffs[id] = detail::number_of(v, "payoffs." + id);
  }

  if (j.contains("variables")) {
    const Json& vars = detail::array(j["variables"], "variables");
    for (std::size_t i = 0; i < vars.size(); ++i) {
      std::string ctx = "variables[" + std::to_string(i) + "]";
      detail::only_keys(vars[i], {"name", "states", "table"}, ctx);
      ChanceVariable v;
      v.name = detail::string_of(detail::field(vars[i], "name", ctx), ctx + ".name");
      for (const auto& s : detail::array(detail::field(vars[i], "states", ctx), ctx + ".states"))
        v.states.push_back(detail::string_of(s, ctx + ".states"));
      const Json& table = detail::array(detail::field(vars[i], "table", ctx), ctx + ".table");
      for (std::size_t r = 0; r < table.size(); ++r) {
        std::string rctx = ctx + ".table[" + std::to_string(r) + "]";
        detail::only_keys(table[r], {"given", "probs"}, rctx);
        TableRow row;
        if (table[r].contains("given")) {
          for (const auto& [var, s] : detail::object(table[r]["given"], rctx + ".given").items())
            row.given[var] = detail::string_of(s, rctx + ".given." + var);
        }
        for (const auto& [s, p] :
             detail::object(detail::field(table[r], "probs", rctx), rctx + ".probs").items())
          row.probs[s] = detail::decimal_of(p, rctx + ".probs." + s);
        v.table.push_back(std::move(row));
      }
      dt.variables.push_back(std::move(v));
    }
  }
  return dt;
}

DecisionTree load_dtree(const std::string& path) {
  DecisionTree dt = parse_dtree(read_file(path));
  auto violations = validate(dt);
  if (!violations.empty()) {
    std::string msg = path + " is not a valid decision tree:";
    for (const auto& v : violations)
      msg += "\n  " + std::string(to_string(v.kind)) + ": " + v.detail;
    throw ModelError(msg);
  }
  return dt;
}

std::string dump_dtree(const DecisionTree& dt) {
  Json j = Json::object();
  j["root"] = dt.root;
  Json nodes = Json::array();
  for (const auto& n : dt.nodes) nodes.push_back({{"id", n.id}, {"kind", to_string(n.kind)}});
  j["nodes"] = std::move(nodes);
  Json events = Json::array();
  for (const auto& a : dt.event_arcs)
    events.push_back({{"from", a.from}, {"to", a.to}, {"event", a.event}});
  j["event_arcs"] = std::move(events);
  Json chances = Json::array();
  for (const auto& a : dt.chance_arcs) {
    Json c = {{"from", a.from}, {"to", a.to}, {"state", a.state}};
    if (!a.label.empty()) c["label"] = a.label;
    c["prob"] = format_exact(a.prob);
    chances.push_back(std::move(c));
  }
  j["chance_arcs"] = std::move(chances);
  Json payoffs = Json::object();
  for (const auto& [id, v] : dt.payoffs) payoffs[id] = v;
  j["payoffs"] = std::move(payoffs);
  Json vars = Json::array();
  for (const auto& v : dt.variables) {
    Json table = Json::array();
    for (const auto& row : v.table) {
      Json given = Json::object();
      for (const auto& [var, s] : row.given) given[var] = s;
      Json probs = Json::object();
      for (const auto& s : v.states) {
        auto it = row.probs.find(s);
        if (it != row.probs.end()) probs[s] = format_exact(it->second);
      }
      for (const auto& [s, p] : row.probs)
        if (!probs.contains(s)) probs[s] = format_exact(p);
      table.push_back({{"given", std::move(given)}, {"probs", std::move(probs)}});
    }
    vars.push_back({{"name", v.name}, {"states", v.states}, {"table", std::move(table)}});
  }
  j["variables"] = std::move(vars);
  return j.dump(2) + "\n";
}

void store_dtree(const DecisionTree& dt, const std::string& path) {
  write_file(path, dump_dtree(dt));
}

}  // namespace bdi
