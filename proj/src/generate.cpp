#include "bdi/generate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bdi/common.hpp"

namespace bdi {

namespace {

std::map<std::string, double> draw_row(std::mt19937_64& rng, const std::vector<std::string>& states) {
  std::uniform_int_distribution<int> weight(1, 9);
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    w.push_back(weight(rng));
    total += w.back();
  }
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < states.size(); ++i) out[states[i]] = w[i] / total;
  return out;
}

void draw_tables(DecisionTree& dt, std::mt19937_64& rng, bool independent) {
  for (std::size_t i = 0; i < dt.variables.size(); ++i) {
    auto& v = dt.variables[i];
    v.table.clear();
    if (i == 0 || independent) {
      v.table.push_back({{}, draw_row(rng, v.states)});
      continue;
    }
    const auto& parent = dt.variables[i - 1];
    for (const auto& s : parent.states) v.table.push_back({{{parent.name, s}}, draw_row(rng, v.states)});
  }
}

bool has_independent_tables(const DecisionTree& dt) {
  for (const auto& v : dt.variables)
    if (v.table.size() != 1 || !v.table.front().given.empty()) return false;
  return true;
}

}  // namespace

void recompute_chance_probs(DecisionTree& dt) {
  auto joint = joint_distribution(dt);
  TreeIndex index(dt);
  std::map<const ChanceArc*, double> probs;
  std::map<std::string, std::string> evidence;
  std::function<void(const std::string&)> walk = [&](const std::string& id) {
    if (index.kind(id) == NodeKind::Decision) {
      for (const auto* a : index.events(id)) walk(a->to);
      return;
    }
    if (index.kind(id) != NodeKind::Chance) return;
    const std::string& var = index.variable_at(id);
    for (const auto* a : index.chances(id)) {
      probs[a] = conditional(joint, var, a->state, evidence).value_or(a->prob);
      auto saved = evidence;
      evidence[var] = a->state;
      walk(a->to);
      evidence = std::move(saved);
    }
  };
  walk(dt.root);
  for (auto& a : dt.chance_arcs) {
    auto it = probs.find(&a);
    if (it != probs.end()) a.prob = it->second;
  }
}

DecisionTree random_tree(std::mt19937_64& rng, const GeneratorOptions& options) {
  static const char* kEvents[] = {"a", "b", "c", "d"};
  static const char* kLetters[] = {"x", "y", "z", "u", "v", "w"};
  DecisionTree dt;
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  int nvars = std::uniform_int_distribution<int>(0, std::max(0, options.max_variables))(rng);
  for (int i = 0; i < nvars; ++i) {
    ChanceVariable v;
    v.name = std::string("v") + std::to_string(i);
    int nstates = std::uniform_int_distribution<int>(2, std::max(2, options.max_states))(rng);
    for (int s = 0; s < nstates; ++s) v.states.push_back(kLetters[i % 6] + std::to_string(s));
    dt.variables.push_back(std::move(v));
  }
  draw_tables(dt, rng, options.independent_tables);

  int counter = 0;
  std::set<std::string> used;  // variables placed somewhere (single occurrence)
  std::set<std::string> on_path;
  std::uniform_int_distribution<int> payoff(0, 1000);
  std::function<std::string(int, bool)> make = [&](int depth, bool allow_chance) -> std::string {
    std::string id = "n" + std::to_string(counter++);
    std::vector<const ChanceVariable*> free;
    for (const auto& v : dt.variables)
      if (!on_path.contains(v.name) && !(options.single_occurrence && used.contains(v.name)))
        free.push_back(&v);

    if (depth >= options.max_depth || (depth > 0 && chance(options.early_stop_prob))) {
      dt.nodes.push_back({id, NodeKind::Terminal});
      dt.payoffs[id] = payoff(rng);
      return id;
    }
    double p_chance = depth == 0 ? options.chance_root_prob : options.chance_prob;
    if (allow_chance && !free.empty() && chance(p_chance)) {
      const ChanceVariable& v =
          *free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
      dt.nodes.push_back({id, NodeKind::Chance});
      used.insert(v.name);
      on_path.insert(v.name);
      for (const auto& s : v.states) {
        std::string child = make(depth + 1, false);
        dt.chance_arcs.push_back({id, child, s, "P(" + s + ")", 0.0});
      }
      on_path.erase(v.name);
      return id;
    }
    dt.nodes.push_back({id, NodeKind::Decision});
    std::vector<std::string> pool(std::begin(kEvents), std::end(kEvents));
    std::shuffle(pool.begin(), pool.end(), rng);
    int nevents = std::uniform_int_distribution<int>(1, std::clamp(options.max_events, 1, 4))(rng);
    for (int e = 0; e < nevents; ++e) {
      std::string child = make(depth + 1, true);
      dt.event_arcs.push_back({id, child, pool[static_cast<std::size_t>(e)]});
    }
    return id;
  };
  dt.root = make(0, true);
  recompute_chance_probs(dt);
  return dt;
}

DecisionTree perturb_probabilities(const DecisionTree& dt, std::mt19937_64& rng) {
  DecisionTree out = dt;
  bool independent = has_independent_tables(dt);
  draw_tables(out, rng, independent);
  recompute_chance_probs(out);
  return out;
}

DecisionTree map_payoffs(const DecisionTree& dt, const std::function<double(double)>& f) {
  DecisionTree out = dt;
  for (auto& [_, v] : out.payoffs) v = f(v);
  return out;
}

}  // namespace bdi
