#include "bdi/model_io.hpp"

#include <algorithm>

#include "json_support.hpp"

namespace bdi {

using detail::Json;

namespace {

Situation situation_of(const std::string& key, const std::string& context) {
  try {
    return parse_situation(key);
  } catch (const ParseError& e) {
    throw ParseError(context + ": " + e.what());
  }
}

std::vector<std::string> strings_of(const Json& j, const std::string& context) {
  detail::array(j, context);
  std::vector<std::string> out;
  for (const auto& item : j) out.push_back(detail::string_of(item, context));
  return out;
}

TimeTreeWorld world_of(const Json& j, std::size_t index) {
  std::string ctx = "worlds[" + std::to_string(index) + "]";
  detail::only_keys(j, {"id", "points", "arcs", "valuation", "leaf_payoffs"}, ctx);
  std::string id = detail::string_of(detail::field(j, "id", ctx), ctx + ".id");
  ctx = "world " + id;
  auto points = strings_of(detail::field(j, "points", ctx), ctx + ".points");

  std::vector<Arc> arcs;
  if (j.contains("arcs")) {
    for (const auto& a : detail::array(j["arcs"], ctx + ".arcs")) {
      detail::expect(a.is_array() && a.size() == 3, ctx + ".arcs", "expected [from, to, event]");
      arcs.push_back({detail::string_of(a[0], ctx + ".arcs"), detail::string_of(a[1], ctx + ".arcs"),
                      detail::string_of(a[2], ctx + ".arcs")});
    }
  }
  std::map<PointId, std::set<std::string>> valuation;
  if (j.contains("valuation")) {
    for (const auto& [p, props] : detail::object(j["valuation"], ctx + ".valuation").items()) {
      auto list = strings_of(props, ctx + ".valuation." + p);
      valuation[p] = {list.begin(), list.end()};
    }
  }
  std::map<PointId, double> payoffs;
  if (j.contains("leaf_payoffs")) {
    for (const auto& [p, v] : detail::object(j["leaf_payoffs"], ctx + ".leaf_payoffs").items())
      payoffs[p] = detail::number_of(v, ctx + ".leaf_payoffs." + p);
  }
  return TimeTreeWorld(id, std::move(points), std::move(arcs), std::move(valuation),
                       std::move(payoffs));
}

Relation relation_of(const Json& j, const std::string& context) {
  Relation r;
  for (const auto& [key, targets] : detail::object(j, context).items()) {
    auto list = strings_of(targets, context + "." + key);
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    r[situation_of(key, context)] = std::move(list);
  }
  return r;
}

Json relation_json(const Relation& r) {
  Json out = Json::object();
  for (const auto& [s, targets] : r) out[s.key()] = targets;
  return out;
}

}  // namespace

Interpretation parse_model(const std::string& text) {
  Json j = detail::parse_json(text);
  detail::only_keys(j, {"designated", "events", "worlds", "accessibility", "prob"}, "model");
  Interpretation m;
  m.designated = situation_of(detail::string_of(detail::field(j, "designated", "model"),
                                                "designated"),
                              "designated");
  const Json& worlds = detail::array(detail::field(j, "worlds", "model"), "worlds");
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    TimeTreeWorld w = world_of(worlds[i], i);
    WorldId id = w.id();
    detail::expect(!m.worlds.contains(id), "worlds", "duplicate world id " + id);
    m.worlds.emplace(id, std::move(w));
  }
  if (j.contains("events")) {
    for (auto& e : strings_of(j["events"], "events")) m.events.insert(e);
  } else {
    for (const auto& [_, w] : m.worlds)
      for (const auto& a : w.arcs()) m.events.insert(a.event);
  }
  if (j.contains("accessibility")) {
    const Json& acc = j["accessibility"];
    detail::only_keys(acc, {"belief", "goal", "intention", "intention_by"}, "accessibility");
    if (acc.contains("belief")) m.belief = relation_of(acc["belief"], "accessibility.belief");
    if (acc.contains("goal")) m.goal = relation_of(acc["goal"], "accessibility.goal");
    if (acc.contains("intention"))
      m.intention = relation_of(acc["intention"], "accessibility.intention");
    if (acc.contains("intention_by")) {
      for (const auto& [name, rel] :
           detail::object(acc["intention_by"], "accessibility.intention_by").items()) {
        auto proc = parse_procedure(name);
        detail::expect(proc.has_value(), "accessibility.intention_by",
                       "unknown procedure '" + name + "'");
        m.intention_by[*proc] = relation_of(rel, "accessibility.intention_by." + name);
      }
    }
  }
  if (j.contains("prob")) {
    for (const auto& [key, dist] : detail::object(j["prob"], "prob").items()) {
      Distribution d;
      for (const auto& [w, p] : detail::object(dist, "prob." + key).items())
        d[w] = detail::number_of(p, "prob." + key + "." + w);
      m.prob[situation_of(key, "prob")] = std::move(d);
    }
  }
  return m;
}

Interpretation load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string dump_model(const Interpretation& m) {
  Json j = Json::object();
  j["designated"] = m.designated.key();
  j["events"] = std::vector<std::string>(m.events.begin(), m.events.end());
  Json worlds = Json::array();
  for (const auto& [id, w] : m.worlds) {
    Json jw = Json::object();
    jw["id"] = id;
    jw["points"] = w.points();
    Json arcs = Json::array();
    for (const auto& a : w.arcs()) arcs.push_back({a.from, a.to, a.event});
    jw["arcs"] = std::move(arcs);
    Json val = Json::object();
    for (const auto& [p, props] : w.valuation())
      if (!props.empty()) val[p] = std::vector<std::string>(props.begin(), props.end());
    jw["valuation"] = std::move(val);
    Json pay = Json::object();
    for (const auto& [p, v] : w.leaf_payoffs()) pay[p] = v;
    jw["leaf_payoffs"] = std::move(pay);
    worlds.push_back(std::move(jw));
  }
  j["worlds"] = std::move(worlds);
  Json acc = Json::object();
  acc["belief"] = relation_json(m.belief);
  acc["goal"] = relation_json(m.goal);
  acc["intention"] = relation_json(m.intention);
  Json by = Json::object();
  for (const auto& [proc, r] : m.intention_by) by[std::string(to_string(proc))] = relation_json(r);
  acc["intention_by"] = std::move(by);
  j["accessibility"] = std::move(acc);
  Json prob = Json::object();
  for (const auto& [s, dist] : m.prob) {
    Json d = Json::object();
    for (const auto& [w, p] : dist) d[w] = p;
    prob[s.key()] = std::move(d);
  }
  j["prob"] = std::move(prob);
  return j.dump(2) + "\n";
}

void store_model(const Interpretation& m, const std::string& path) {
  write_file(path, dump_model(m));
}

}  // namespace bdi
