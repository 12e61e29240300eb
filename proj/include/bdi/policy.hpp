#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bdi/common.hpp"
#include "bdi/interpretation.hpp"

namespace bdi {

// Possible-worlds deliberation by policy enumeration.
//
// From the designated situation, every goal world is unrolled into
// observation histories: the events taken so far and the propositions seen
// at each point reached. Decision points with equal histories form one
// information set and must choose the same event in every world. A policy
// fixes one event per information set it can reach; it induces one path in
// each goal world, and is scored by expected payoff (maxexpval) or by the
// worst payoff over worlds of positive weight (maximin).

/// Information sets and per-world transitions, flattened for scoring.
class PolicyProblem {
 public:
  static constexpr std::int32_t kUnreachable = INT32_MIN;

  /// Throws ModelError when worlds disagree on the events available under
  /// one history, or when the designated point is missing from a goal world.
  PolicyProblem(const Interpretation& m, const Situation& s);

  std::size_t infoset_count() const { return keys_.size(); }
  std::size_t world_count() const { return worlds_.size(); }
  std::size_t max_options() const { return max_options_; }

  const std::string& key(std::size_t infoset) const { return keys_[infoset]; }
  const std::vector<std::string>& options(std::size_t infoset) const { return options_[infoset]; }
  const std::vector<WorldId>& worlds() const { return worlds_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Where world w starts: an information set (>= 0) or a leaf (-1 - leaf).
  std::int32_t entry(std::size_t w) const { return entry_[w]; }
  /// Next step of world w after option k at information set i, encoded as
  /// for entry(); kUnreachable when w never visits i.
  std::int32_t next(std::size_t w, std::size_t i, std::size_t k) const {
    return next_[(w * keys_.size() + i) * max_options_ + k];
  }
  /// Leaf payoff; NaN when undefined.
  double leaf_payoff(std::size_t leaf) const { return leaf_payoff_[leaf]; }
  const PointId& leaf_point(std::size_t leaf) const { return leaf_point_[leaf]; }
  /// The point of world w at information set i (empty when not visited).
  const PointId& point(std::size_t w, std::size_t i) const {
    return point_[w * keys_.size() + i];
  }
  /// Information sets reachable right after option k at i, in any world.
  const std::vector<std::uint32_t>& successors(std::size_t i, std::size_t k) const {
    return successors_[i * max_options_ + k];
  }
  /// Information sets reachable before any choice.
  const std::vector<std::uint32_t>& roots() const { return roots_; }

 private:
  std::vector<std::string> keys_;
  std::vector<std::vector<std::string>> options_;
  std::vector<WorldId> worlds_;
  std::vector<double> weights_;
  std::vector<std::int32_t> entry_;
  std::vector<std::int32_t> next_;
  std::vector<double> leaf_payoff_;
  std::vector<PointId> leaf_point_;
  std::vector<PointId> point_;
  std::vector<std::vector<std::uint32_t>> successors_;
  std::vector<std::uint32_t> roots_;
  std::size_t max_options_ = 1;
};

/// Weight of each goal world at s: the probability of every belief world is
/// shared equally among its goal sub-worlds.
std::map<WorldId, double> goal_weights(const Interpretation& m, const Situation& s);

/// Policies as rows of `infosets` choice indices; kUnset marks information
/// sets the policy never reaches.
struct PolicyTable {
  static constexpr std::uint8_t kUnset = 0xff;
  std::size_t infosets = 0;
  std::size_t count = 0;
  std::vector<std::uint8_t> choices;
  const std::uint8_t* row(std::size_t p) const { return choices.data() + p * infosets; }
};

inline constexpr std::size_t kMaxPolicies = std::size_t{1} << 22;

/// Every reduced policy. Throws UnsupportedError beyond `limit` policies.
PolicyTable enumerate_policies(const PolicyProblem& problem, std::size_t limit = kMaxPolicies);

/// Scores of every policy; NaN where a reached leaf has no payoff.
std::vector<double> score_policies_serial(const PolicyProblem& problem, const PolicyTable& table,
                                          Procedure proc);
/// OpenMP version of score_policies_serial with identical results.
std::vector<double> score_policies_parallel(const PolicyProblem& problem,
                                            const PolicyTable& table, Procedure proc);

struct PwResult {
  Interpretation interpretation;
  double best_score = 0.0;
  std::size_t policy_count = 0;
  /// Optimal policies (within tolerance), as history key -> event.
  std::vector<std::map<std::string, std::string>> kept;
  std::map<WorldId, double> weights;
  /// Goal world -> intention world.
  std::map<WorldId, WorldId> intention_of;
  /// (point, event) choices made by optimal policies in goal worlds of
  /// positive weight.
  std::set<std::pair<PointId, std::string>> used_choices;
};

enum class Scoring { Serial, Parallel };

/// Runs policy enumeration at the designated situation and attaches the
/// intention worlds: each goal world pruned to the paths that optimal
/// policies induce in it, keeping the past of the designated point. Both
/// the tagged and the current intention relation are set at every
/// situation with goal entries and at the root of every intention world.
PwResult pw_deliberate_detailed(const Interpretation& m, Procedure proc,
                                Scoring scoring = Scoring::Parallel);
Interpretation pw_deliberate(const Interpretation& m, Procedure proc);

/// "i_maxexpval_yes_win" for goal world "g_yes_win".
WorldId intention_world_id(Procedure proc, const WorldId& goal_world);

}  // namespace bdi
