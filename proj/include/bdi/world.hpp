#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace bdi {

using PointId = std::string;
using WorldId = std::string;

struct Arc {
  PointId from;
  PointId to;
  std::string event;
  bool operator==(const Arc&) const = default;
};

/// A finite time tree: single past, branching future, one primitive event
/// per arc, propositions per point and payoffs on (some) leaves.
///
/// The value is immutable. Construction never fails: structurally broken
/// input is kept as-is so validate_world() can report what is wrong, and the
/// navigation index is then best-effort.
class TimeTreeWorld {
 public:
  TimeTreeWorld() = default;
  TimeTreeWorld(WorldId id, std::vector<PointId> points, std::vector<Arc> arcs,
                std::map<PointId, std::set<std::string>> valuation = {},
                std::map<PointId, double> leaf_payoffs = {});

  const WorldId& id() const { return id_; }
  const std::vector<PointId>& points() const { return points_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::map<PointId, std::set<std::string>>& valuation() const { return valuation_; }
  const std::map<PointId, double>& leaf_payoffs() const { return leaf_payoffs_; }

  bool contains(const PointId& t) const { return index_.contains(t); }
  /// The (first) root, or empty when there is none.
  const PointId& root() const { return root_; }
  /// Propositions true at t (empty set for unknown points).
  const std::set<std::string>& true_at(const PointId& t) const;
  bool holds(const PointId& t, const std::string& proposition) const;
  std::optional<double> payoff(const PointId& t) const;
  /// The arc entering t, if any.
  const Arc* incoming(const PointId& t) const;
  /// Outgoing arcs ordered by (event, target id).
  std::span<const Arc> outgoing(const PointId& t) const;
  bool is_leaf(const PointId& t) const { return outgoing(t).empty(); }
  const Arc* successor(const PointId& t, const std::string& event) const;
  /// Ancestors of t from the root down to t's parent.
  std::vector<PointId> history(const PointId& t) const;

  bool operator==(const TimeTreeWorld& other) const;

 private:
  struct Node {
    std::optional<std::size_t> incoming;
    std::vector<Arc> outgoing;
  };

  WorldId id_;
  std::vector<PointId> points_;
  std::vector<Arc> arcs_;
  std::map<PointId, std::set<std::string>> valuation_;
  std::map<PointId, double> leaf_payoffs_;
  std::map<PointId, Node> index_;
  PointId root_;
};

enum class WorldViolationKind {
  EmptyWorld,
  DuplicatePoint,
  UnknownPoint,
  EmptyEvent,
  NoSingleRoot,
  BackwardBranching,
  Cycle,
  Unreachable,
  PayoffOnInnerPoint,
};

struct WorldViolation {
  WorldViolationKind kind;
  std::string detail;
};

std::string_view to_string(WorldViolationKind kind);

/// Empty iff the world is a finite rooted tree with single past, every arc
/// labelled, and payoffs only on leaves.
std::vector<WorldViolation> validate_world(const TimeTreeWorld& w);

/// A maximal sequence of points from a start point to a leaf.
struct Fullpath {
  WorldId world;
  std::vector<PointId> points;
  bool operator==(const Fullpath&) const = default;
};

/// All fullpaths starting at `from`, ordered lexicographically by
/// (event, point id) at each branching. Throws ModelError for unknown points.
std::vector<Fullpath> fullpaths(const TimeTreeWorld& w, const PointId& from);

}  // namespace bdi
