#include "bdi/policy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <tuple>

namespace bdi {

namespace {

std::string observed(const TimeTreeWorld& w, const PointId& p) {
  std::string out = "{";
  bool first = true;
  for (const auto& prop : w.true_at(p)) {
    if (!first) out += ",";
    out += prop;
    first = false;
  }
  return out + "}";
}

}  // namespace

std::map<WorldId, double> goal_weights(const Interpretation& m, const Situation& s) {
  std::map<WorldId, double> out;
  const auto& goals = m.goals(s);
  for (const auto& g : goals) out[g] = 0.0;
  auto dist = m.prob.find(s);
  if (dist == m.prob.end()) return out;
  for (const auto& b : m.beliefs(s)) {
    auto it = dist->second.find(b);
    if (it == dist->second.end() || it->second == 0.0) continue;
    const auto& wb = m.world(b);
    if (!wb.contains(s.time)) continue;
    std::vector<WorldId> subs;
    for (const auto& g : goals) {
      const auto& wg = m.world(g);
      if (wg.contains(s.time) && is_subworld(wg, wb, s.time)) subs.push_back(g);
    }
    for (const auto& g : subs) out[g] += it->second / static_cast<double>(subs.size());
  }
  return out;
}

PolicyProblem::PolicyProblem(const Interpretation& m, const Situation& s) {
  worlds_ = m.goals(s);
  auto weights = goal_weights(m, s);
  for (const auto& g : worlds_) weights_.push_back(weights.at(g));

  std::map<std::string, std::uint32_t> ids;
  std::vector<std::tuple<std::size_t, std::uint32_t, std::size_t, std::int32_t>> moves;
  std::map<std::pair<std::size_t, std::uint32_t>, PointId> visits;

  for (std::size_t wi = 0; wi < worlds_.size(); ++wi) {
    const TimeTreeWorld& w = m.world(worlds_[wi]);
    if (!w.contains(s.time))
      throw ModelError("goal world " + w.id() + " has no point " + s.time);

    auto leaf = [&](const PointId& p) {
      leaf_payoff_.push_back(w.payoff(p).value_or(std::numeric_limits<double>::quiet_NaN()));
      leaf_point_.push_back(p);
      return -1 - static_cast<std::int32_t>(leaf_payoff_.size() - 1);
    };
    std::function<std::int32_t(const PointId&, const std::string&)> visit =
        [&](const PointId& p, const std::string& key) -> std::int32_t {
      if (w.is_leaf(p)) return leaf(p);
      std::vector<std::string> events;
      for (const auto& a : w.outgoing(p)) events.push_back(a.event);
      if (std::adjacent_find(events.begin(), events.end()) != events.end())
        throw ModelError("world " + w.id() + " repeats an event at " + p);
      auto [it, fresh] = ids.try_emplace(key, static_cast<std::uint32_t>(keys_.size()));
      std::uint32_t id = it->second;
      if (fresh) {
        keys_.push_back(key);
        options_.push_back(events);
      } else if (options_[id] != events) {
        throw ModelError("worlds offer different events after history " + key);
      }
      if (events.size() >= PolicyTable::kUnset)
        throw UnsupportedError("too many events at " + p);
      max_options_ = std::max(max_options_, events.size());
      visits[{wi, id}] = p;
      const auto arcs = w.outgoing(p);
      for (std::size_t k = 0; k < arcs.size(); ++k) {
        std::string child = key + " " + arcs[k].event + observed(w, arcs[k].to);
        moves.emplace_back(wi, id, k, visit(arcs[k].to, child));
      }
      return static_cast<std::int32_t>(id);
    };
    entry_.push_back(visit(s.time, observed(w, s.time)));
  }

  const std::size_t n = keys_.size();
  next_.assign(worlds_.size() * n * max_options_, kUnreachable);
  point_.assign(worlds_.size() * n, PointId{});
  successors_.assign(n * max_options_, {});
  for (const auto& [wi, i, k, target] : moves) {
    next_[(wi * n + i) * max_options_ + k] = target;
    if (target >= 0) {
      auto& succ = successors_[i * max_options_ + k];
      if (std::find(succ.begin(), succ.end(), static_cast<std::uint32_t>(target)) == succ.end())
        succ.push_back(static_cast<std::uint32_t>(target));
    }
  }
  for (const auto& [where, p] : visits) point_[where.first * n + where.second] = p;
  for (auto e : entry_)
    if (e >= 0 && std::find(roots_.begin(), roots_.end(), static_cast<std::uint32_t>(e)) ==
                      roots_.end())
      roots_.push_back(static_cast<std::uint32_t>(e));
}

PolicyTable enumerate_policies(const PolicyProblem& problem, std::size_t limit) {
  PolicyTable table;
  table.infosets = problem.infoset_count();
  std::vector<std::uint8_t> row(table.infosets, PolicyTable::kUnset);

  std::function<void(std::vector<std::uint32_t>)> extend = [&](std::vector<std::uint32_t> pending) {
    while (!pending.empty() && row[pending.back()] != PolicyTable::kUnset) pending.pop_back();
    if (pending.empty()) {
      if (++table.count > limit)
        throw UnsupportedError("more than " + std::to_string(limit) + " policies");
      table.choices.insert(table.choices.end(), row.begin(), row.end());
      return;
    }
    std::uint32_t i = pending.back();
    pending.pop_back();
    for (std::size_t k = 0; k < problem.options(i).size(); ++k) {
      row[i] = static_cast<std::uint8_t>(k);
      auto more = pending;
      const auto& succ = problem.successors(i, k);
      more.insert(more.end(), succ.rbegin(), succ.rend());
      extend(std::move(more));
    }
    row[i] = PolicyTable::kUnset;
  };
  std::vector<std::uint32_t> start(problem.roots().rbegin(), problem.roots().rend());
  extend(std::move(start));
  return table;
}

namespace {

// Payoff of the path that policy `row` induces in world w.
inline double walk(const PolicyProblem& problem, const std::uint8_t* row, std::size_t w) {
  std::int32_t cur = problem.entry(w);
  while (cur >= 0) {
    std::uint8_t k = row[cur];
    if (k == PolicyTable::kUnset) return std::numeric_limits<double>::quiet_NaN();
    cur = problem.next(w, static_cast<std::size_t>(cur), k);
    if (cur == PolicyProblem::kUnreachable) return std::numeric_limits<double>::quiet_NaN();
  }
  return problem.leaf_payoff(static_cast<std::size_t>(-1 - cur));
}

inline double score_one(const PolicyProblem& problem, const std::uint8_t* row, Procedure proc,
                        bool any_positive) {
  const auto& weights = problem.weights();
  const std::size_t worlds = problem.world_count();
  if (proc == Procedure::MaxExpVal) {
    double total = 0.0;
    for (std::size_t w = 0; w < worlds; ++w) {
      double v = walk(problem, row, w);
      if (std::isnan(v)) return v;
      total += weights[w] * v;
    }
    return total;
  }
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < worlds; ++w) {
    double v = walk(problem, row, w);
    if (std::isnan(v)) return v;
    if (any_positive && !(weights[w] > 0.0)) continue;
    worst = std::min(worst, v);
  }
  return worst;
}

bool has_positive(const PolicyProblem& problem) {
  for (double w : problem.weights())
    if (w > 0.0) return true;
  return false;
}

}  // namespace

std::vector<double> score_policies_serial(const PolicyProblem& problem, const PolicyTable& table,
                                          Procedure proc) {
  std::vector<double> out(table.count);
  const bool any_positive = has_positive(problem);
  for (std::size_t p = 0; p < table.count; ++p)
    out[p] = score_one(problem, table.row(p), proc, any_positive);
  return out;
}

std::vector<double> score_policies_parallel(const PolicyProblem& problem,
                                            const PolicyTable& table, Procedure proc) {
  std::vector<double> out(table.count);
  const bool any_positive = has_positive(problem);
  const auto n = static_cast<std::int64_t>(table.count);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < n; ++p)
    out[static_cast<std::size_t>(p)] =
        score_one(problem, table.row(static_cast<std::size_t>(p)), proc, any_positive);
  return out;
}

WorldId intention_world_id(Procedure proc, const WorldId& goal_world) {
  std::string rest = goal_world;
  if (rest == "g") rest.clear();
  else if (rest.rfind("g_", 0) == 0) rest = rest.substr(2);
  std::string id = "i_" + std::string(to_string(proc));
  return rest.empty() ? id : id + "_" + rest;
}

PwResult pw_deliberate_detailed(const Interpretation& m, Procedure proc, Scoring scoring) {
  const Situation s = m.designated;
  if (!m.has_situation(s)) throw ModelError("designated situation " + s.key() + " does not exist");
  if (m.goals(s).empty()) throw ModelError("no goal worlds at " + s.key());

  PolicyProblem problem(m, s);
  PolicyTable table = enumerate_policies(problem);
  auto scores = scoring == Scoring::Serial ? score_policies_serial(problem, table, proc)
                                           : score_policies_parallel(problem, table, proc);

  for (std::size_t p = 0; p < table.count; ++p) {
    if (!std::isnan(scores[p])) continue;
    for (std::size_t w = 0; w < problem.world_count(); ++w)
      if (std::isnan(walk(problem, table.row(p), w)))
        throw ModelError("goal world " + problem.worlds()[w] +
                         " reaches a leaf without payoff under some policy");
  }

  PwResult r;
  r.policy_count = table.count;
  r.best_score = *std::max_element(scores.begin(), scores.end());
  for (std::size_t w = 0; w < problem.world_count(); ++w)
    r.weights[problem.worlds()[w]] = problem.weights()[w];

  std::vector<std::size_t> kept;
  for (std::size_t p = 0; p < table.count; ++p)
    if (scores[p] >= r.best_score - kTolerance) kept.push_back(p);

  for (auto p : kept) {
    std::map<std::string, std::string> choice;
    const auto* row = table.row(p);
    for (std::size_t i = 0; i < table.infosets; ++i)
      if (row[i] != PolicyTable::kUnset) choice[problem.key(i)] = problem.options(i)[row[i]];
    r.kept.push_back(std::move(choice));
  }

  r.interpretation = m;
  Interpretation& out = r.interpretation;
  std::vector<WorldId> intention_ids;
  for (std::size_t w = 0; w < problem.world_count(); ++w) {
    const TimeTreeWorld& g = m.world(problem.worlds()[w]);
    std::set<PointId> keep;
    for (const auto& h : g.history(s.time)) keep.insert(h);
    keep.insert(s.time);
    for (auto p : kept) {
      const auto* row = table.row(p);
      std::int32_t cur = problem.entry(w);
      while (cur >= 0) {
        const PointId& at = problem.point(w, static_cast<std::size_t>(cur));
        keep.insert(at);
        std::uint8_t k = row[cur];
        if (problem.weights()[w] > 0.0)
          r.used_choices.insert({at, problem.options(static_cast<std::size_t>(cur))[k]});
        cur = problem.next(w, static_cast<std::size_t>(cur), k);
      }
      keep.insert(problem.leaf_point(static_cast<std::size_t>(-1 - cur)));
    }

    std::vector<PointId> points;
    for (const auto& p : g.points())
      if (keep.contains(p)) points.push_back(p);
    std::vector<Arc> arcs;
    for (const auto& a : g.arcs())
      if (keep.contains(a.from) && keep.contains(a.to)) arcs.push_back(a);
    std::map<PointId, std::set<std::string>> valuation;
    for (const auto& [p, props] : g.valuation())
      if (keep.contains(p)) valuation[p] = props;
    std::map<PointId, double> payoffs;
    for (const auto& [p, v] : g.leaf_payoffs())
      if (keep.contains(p)) payoffs[p] = v;

    WorldId id = intention_world_id(proc, g.id());
    out.worlds.insert_or_assign(id, TimeTreeWorld(id, std::move(points), std::move(arcs),
                                                  std::move(valuation), std::move(payoffs)));
    r.intention_of[g.id()] = id;
    intention_ids.push_back(id);
  }
  std::sort(intention_ids.begin(), intention_ids.end());

  Relation& tagged = out.intention_by[proc];
  tagged.clear();
  out.intention.clear();
  std::vector<Situation> anchors;
  for (const auto& [sit, goals] : m.goal)
    if (!goals.empty()) anchors.push_back(sit);
  for (const auto& id : intention_ids) anchors.push_back({id, s.time});
  for (const auto& sit : anchors) {
    tagged[sit] = intention_ids;
    out.intention[sit] = intention_ids;
  }
  return r;
}

Interpretation pw_deliberate(const Interpretation& m, Procedure proc) {
  return pw_deliberate_detailed(m, proc).interpretation;
}

}  // namespace bdi
