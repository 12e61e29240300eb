#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bdi/common.hpp"
#include "bdi/dtree.hpp"
#include "bdi/transform.hpp"

namespace bdi::testing {

/// One world produced by the create/remove recursion.
struct LiteralWorld {
  std::set<std::string> states;
  double prob = 1.0;
  std::set<std::tuple<std::string, std::string, std::string>> arcs;  // from, to, event
  std::map<std::string, std::set<std::string>> valuation;
  std::map<std::string, double> payoffs;
};

/// Splits the tree at one chance node at a time: every outgoing state gives
/// a copy where the incoming event arc is redirected to that state's child,
/// the state is marked there, and the running probability is multiplied by
/// the arc probability. Only meaningful when every variable sits at a
/// single chance node with an unconditioned table.
std::vector<LiteralWorld> literal_create_remove(const DecisionTree& dt);

struct BruteForceResult {
  double best = 0.0;
  std::size_t policies = 0;
  std::vector<double> scores;
  /// (point, event) choices on the induced paths of optimal policies in
  /// worlds of positive weight.
  std::set<std::pair<std::string, std::string>> choices;
};

/// Enumerates every assignment of an event to every observation history of
/// the goal worlds (no pruning of unreachable histories) and scores it with
/// the goal worlds' assignment probabilities. nullopt when there would be
/// more than `limit` assignments.
std::optional<BruteForceResult> brute_force_policies(const TransformResult& tr, Procedure proc,
                                                     std::size_t limit = 200000);

/// Path to a file in the fixtures directory.
std::string fixture(const std::string& name);

/// The phil fixture's (yes, win) goal world written out by hand.
TimeTreeWorld hand_drawn_yes_win();

}  // namespace bdi::testing
