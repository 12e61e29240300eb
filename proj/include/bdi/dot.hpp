#pragma once

#include <string>

#include "bdi/dtree.hpp"
#include "bdi/world.hpp"

namespace bdi {

/// Graphviz digraph of one world: circles for time points labelled with
/// their true propositions, leaves also with their payoff, arcs labelled
/// with events.
std::string render_dot(const TimeTreeWorld& w);

/// Graphviz digraph of a decision tree: boxes for decisions, circles for
/// chance nodes, plain text for terminals.
std::string render_dot(const DecisionTree& dt);

}  // namespace bdi
