#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bdi {

enum class NodeKind { Decision, Chance, Terminal };

std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);

struct DtNode {
  std::string id;
  NodeKind kind;
  bool operator==(const DtNode&) const = default;
};

struct EventArc {
  std::string from;
  std::string to;
  std::string event;
  bool operator==(const EventArc&) const = default;
};

/// An arc out of a chance node: the state it resolves, a symbolic label
/// such as "P(win|yes)", and the numeric probability.
struct ChanceArc {
  std::string from;
  std::string to;
  std::string state;
  std::string label;
  double prob = 0.0;
  bool operator==(const ChanceArc&) const = default;
};

/// One conditional distribution of a variable. `given` fixes states of
/// earlier variables; a variable left out of `given` is not conditioned on.
struct TableRow {
  std::map<std::string, std::string> given;
  std::map<std::string, double> probs;
  bool operator==(const TableRow&) const = default;
};

struct ChanceVariable {
  std::string name;
  std::vector<std::string> states;
  std::vector<TableRow> table;
  bool operator==(const ChanceVariable&) const = default;
};

struct DecisionTree {
  std::vector<DtNode> nodes;
  std::vector<EventArc> event_arcs;
  std::vector<ChanceArc> chance_arcs;
  std::map<std::string, double> payoffs;
  std::string root;
  std::vector<ChanceVariable> variables;
  bool operator==(const DecisionTree&) const = default;
};

enum class DtViolationKind {
  EmptyTree,
  BadIdentifier,
  DuplicateNode,
  UnknownNode,
  NotATree,
  ArcKindMismatch,
  DecisionWithoutChoice,
  DuplicateEvent,
  ChanceArity,
  ChanceToChance,
  ProbRange,
  ProbSumViolation,
  StateOwnershipViolation,
  MixedVariables,
  IncompleteChance,
  MissingPayoff,
  PayoffOnNonTerminal,
  TableViolation,
  InconsistentProbability,
};

std::string_view to_string(DtViolationKind kind);

struct DtViolation {
  DtViolationKind kind;
  std::string detail;
};

/// Empty iff the tree is well formed, including agreement of every chance
/// node's probabilities with the joint distribution of the variable tables.
std::vector<DtViolation> validate(const DecisionTree& dt);

/// Navigation over a tree. Holds pointers into `dt`, which must outlive it.
/// Children are ordered by event (decision) or by the variable's state
/// order (chance).
class TreeIndex {
 public:
  explicit TreeIndex(const DecisionTree& dt);

  const DecisionTree& tree() const { return *dt_; }
  bool contains(const std::string& id) const { return kind_.contains(id); }
  NodeKind kind(const std::string& id) const;
  const std::vector<const EventArc*>& events(const std::string& id) const;
  const std::vector<const ChanceArc*>& chances(const std::string& id) const;
  /// Parent node id, empty for the root.
  const std::string& parent(const std::string& id) const;
  /// Variable resolved at a chance node (empty when its states are unknown).
  const std::string& variable_at(const std::string& chance_node) const;
  /// Variable owning a state, or nullptr.
  const ChanceVariable* owner(const std::string& state) const;
  double payoff(const std::string& terminal) const;

 private:
  const DecisionTree* dt_;
  std::map<std::string, NodeKind> kind_;
  std::map<std::string, std::vector<const EventArc*>> events_;
  std::map<std::string, std::vector<const ChanceArc*>> chances_;
  std::map<std::string, std::string> parent_;
  std::map<std::string, std::string> variable_;
  std::map<std::string, const ChanceVariable*> owner_;
};

/// One state per variable and its chain-rule probability.
struct JointAssignment {
  std::map<std::string, std::string> assignment;
  double prob = 1.0;
  bool operator==(const JointAssignment&) const = default;
};

/// All joint assignments in declaration order (first variable slowest),
/// states in declared order. Tables must be complete; throws ModelError
/// when a row is missing.
std::vector<JointAssignment> joint_distribution(const DecisionTree& dt);

/// P(variable = state | the states in `evidence`) under the joint
/// distribution; nullopt when the evidence has probability zero.
std::optional<double> conditional(const std::vector<JointAssignment>& joint,
                                  const std::string& variable, const std::string& state,
                                  const std::map<std::string, std::string>& evidence);

// `.dtree` file format (JSON):
//
//   {
//     "root": "t0",
//     "nodes": [{"id": "t0", "kind": "decision"}, ...],
//     "event_arcs": [{"from": "t0", "to": "c_poll", "event": "Poll"}, ...],
//     "chance_arcs": [{"from": "c_poll", "to": "t_yes", "state": "yes",
//                      "label": "P(yes)", "prob": "0.42"}, ...],
//     "payoffs": {"t_yes_rep": 200, ...},
//     "variables": [{"name": "poll", "states": ["yes", "no"],
//                    "table": [{"given": {}, "probs": {"yes": "0.42", "no": "0.58"}}]}]
//   }
//
// Probabilities are decimal strings; "label" and "variables" are optional.
// Unknown fields and unknown node kinds are errors.

/// Schema-checked parse without validation. Throws ParseError.
DecisionTree parse_dtree(const std::string& text);
/// Parses and validates; throws ModelError listing the violations.
DecisionTree load_dtree(const std::string& path);
std::string dump_dtree(const DecisionTree& dt);
void store_dtree(const DecisionTree& dt, const std::string& path);

}  // namespace bdi
