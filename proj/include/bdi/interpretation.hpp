#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bdi/common.hpp"
#include "bdi/world.hpp"

namespace bdi {

/// A world at a time point, written "world@point".
struct Situation {
  WorldId world;
  PointId time;
  auto operator<=>(const Situation&) const = default;
  std::string key() const { return world + "@" + time; }
};

/// Parses "world@point". Throws ParseError.
Situation parse_situation(const std::string& key);

/// Situation -> accessible world ids (sorted, unique).
using Relation = std::map<Situation, std::vector<WorldId>>;
/// Discrete probability function over world ids.
using Distribution = std::map<WorldId, double>;

/// A possible-worlds interpretation: time-tree worlds, belief / goal /
/// intention accessibility, a probability function per situation and a
/// designated situation. Payoffs live on the worlds' leaves.
///
/// Intention accessibility exists in two flavours: `intention` is the
/// current (untagged) relation and `intention_by` holds the relation each
/// deliberation procedure produced. INTEND[d] reads the latter.
struct Interpretation {
  std::map<WorldId, TimeTreeWorld> worlds;
  std::set<std::string> events;
  Relation belief;
  Relation goal;
  Relation intention;
  std::map<Procedure, Relation> intention_by;
  std::map<Situation, Distribution> prob;
  Situation designated;

  const TimeTreeWorld& world(const WorldId& id) const;
  bool has_situation(const Situation& s) const;

  /// Accessible worlds (empty when the situation has no entry).
  const std::vector<WorldId>& accessible(const Relation& r, const Situation& s) const;
  const std::vector<WorldId>& beliefs(const Situation& s) const { return accessible(belief, s); }
  const std::vector<WorldId>& goals(const Situation& s) const { return accessible(goal, s); }
  /// The tagged relation when `procedure` is given (ModelError if that
  /// procedure never ran), the current relation otherwise.
  const std::vector<WorldId>& intentions(const Situation& s,
                                         std::optional<Procedure> procedure = {}) const;
};

struct InterpretationIssue {
  std::string detail;
};

/// Structural problems: invalid worlds, dangling world ids in relations or
/// distributions, negative weights, support outside the belief set, a
/// designated situation that does not exist.
std::vector<InterpretationIssue> validate_interpretation(const Interpretation& m);

/// `sub` is a sub-world of `sup` at `at`: its points are a subset, arcs,
/// events, valuation and leaf payoffs agree with `sup` restricted to those
/// points, and the history of `at` is identical in both. Throws ModelError
/// for unknown worlds or when `at` is missing from either world.
bool is_subworld(const WorldId& sub, const WorldId& sup, const PointId& at,
                 const Interpretation& m);
bool is_subworld(const TimeTreeWorld& sub, const TimeTreeWorld& sup, const PointId& at);

}  // namespace bdi
