#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "bdi/dtree.hpp"

namespace bdi {

struct GeneratorOptions {
  int max_depth = 4;       // levels of decision and chance nodes
  int max_variables = 2;
  int max_states = 3;
  int max_events = 3;      // drawn from {a, b, c, d}
  double chance_prob = 0.4;
  double chance_root_prob = 0.1;
  double early_stop_prob = 0.2;
  /// Each variable resolves at no more than one chance node.
  bool single_occurrence = false;
  /// Every table has a single unconditioned row.
  bool independent_tables = false;
};

/// A random valid tree. Table probabilities are weights 1..9 normalised,
/// chance arcs carry the matching conditionals, payoffs are integers in
/// [0, 1000].
DecisionTree random_tree(std::mt19937_64& rng, const GeneratorOptions& options = {});

/// Sets every chance arc to P(state | states resolved above it).
void recompute_chance_probs(DecisionTree& dt);

/// Same structure with freshly drawn tables.
DecisionTree perturb_probabilities(const DecisionTree& dt, std::mt19937_64& rng);

DecisionTree map_payoffs(const DecisionTree& dt, const std::function<double(double)>& f);

}  // namespace bdi
