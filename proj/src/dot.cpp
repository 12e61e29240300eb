#include "bdi/dot.hpp"

#include <sstream>

#include "bdi/common.hpp"

namespace bdi {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_dot(const TimeTreeWorld& w) {
  std::ostringstream out;
  out << "digraph " << quoted(w.id()) << " {\n";
  out << "  node [shape=circle];\n";
  for (const auto& p : w.points()) {
    std::string label = p;
    std::string props;
    for (const auto& prop : w.true_at(p)) props += (props.empty() ? "" : ",") + prop;
    if (!props.empty()) label += "\\n" + props;
    if (auto v = w.payoff(p)) label += "\\n" + format_number(*v);
    // Labels carry their own \n escapes, so quote by hand.
    out << "  " << quoted(p) << " [label=\"" << label << "\"];\n";
  }
  for (const auto& a : w.arcs())
    out << "  " << quoted(a.from) << " -> " << quoted(a.to) << " [label=" << quoted(a.event)
        << "];\n";
  out << "}\n";
  return out.str();
}

std::string render_dot(const DecisionTree& dt) {
  std::ostringstream out;
  out << "digraph \"decision_tree\" {\n";
  for (const auto& n : dt.nodes) {
    out << "  " << quoted(n.id);
    switch (n.kind) {
      case NodeKind::Decision: out << " [shape=box]"; break;
      case NodeKind::Chance: out << " [shape=circle]"; break;
      case NodeKind::Terminal: {
        auto it = dt.payoffs.find(n.id);
        std::string label = n.id;
        if (it != dt.payoffs.end()) label += "\\n" + format_number(it->second);
        out << " [shape=plaintext, label=\"" << label << "\"]";
        break;
      }
    }
    out << ";\n";
  }
  for (const auto& a : dt.event_arcs)
    out << "  " << quoted(a.from) << " -> " << quoted(a.to) << " [label=" << quoted(a.event)
        << "];\n";
  for (const auto& a : dt.chance_arcs)
    out << "  " << quoted(a.from) << " -> " << quoted(a.to) << " [label="
        << quoted(a.state + " " + format_number(a.prob)) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace bdi
