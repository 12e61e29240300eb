#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bdi/dtree.hpp"
#include "bdi/interpretation.hpp"

namespace bdi {

/// A branch the agent believes possible but does not desire, grafted onto
/// every belief world that contains `at`. Nested children hang below
/// `point`; their own `at` is ignored. Extras carry no payoffs.
struct ExtraBranch {
  PointId at;
  std::string event;
  PointId point;
  std::set<std::string> props;
  std::vector<ExtraBranch> children;
  bool operator==(const ExtraBranch&) const = default;
};

/// Extras file: a JSON array of {"at", "event", "point", "props", "children"}.
std::vector<ExtraBranch> parse_extras(const std::string& text);
std::vector<ExtraBranch> load_extras(const std::string& path);

struct TransformResult {
  Interpretation interpretation;
  /// Goal and belief world ids to the assignment that produced them.
  std::map<WorldId, JointAssignment> world_index;
  std::vector<WorldId> goal_worlds;    // in assignment order
  std::vector<WorldId> belief_worlds;  // paired with goal_worlds
};

/// Joint assignments in variable declaration order, then state order.
std::vector<JointAssignment> enumerate_assignments(const DecisionTree& dt);

/// "yes_win" for {poll: yes, election: win}; empty without variables.
std::string assignment_suffix(const DecisionTree& dt, const JointAssignment& a);
/// "g_yes_win", or "g" for a tree without chance variables.
WorldId goal_world_id(const DecisionTree& dt, const JointAssignment& a);
WorldId belief_world_id(const DecisionTree& dt, const JointAssignment& a);

/// Time point that stands for a decision or terminal node in resolved
/// worlds. The same as the node id, except below a chance root, whose
/// selected child is merged into the root point.
PointId point_id_for(const DecisionTree& dt, const std::string& node);

/// The world of one assignment: chance nodes are bypassed along the chosen
/// state, which becomes true at the next point and stays true below it.
/// Throws ModelError when `a` misses a variable used by the tree.
TimeTreeWorld resolve(const DecisionTree& dt, const JointAssignment& a, const WorldId& id);

/// Goal worlds, belief worlds (goal worlds plus extras), and belief, goal
/// and probability entries at the root situation of every world. The
/// designated situation is the root of the most probable belief world.
/// Throws ModelError for extras that cannot be attached.
TransformResult transform(const DecisionTree& dt, const std::vector<ExtraBranch>& extras = {});

}  // namespace bdi
