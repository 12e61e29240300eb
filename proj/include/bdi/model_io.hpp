#pragma once

#include <string>

#include "bdi/interpretation.hpp"

namespace bdi {

// Model file format (JSON):
//
//   {
//     "designated": "world@point",
//     "events": ["Poll", ...],
//     "worlds": [{"id": "g_yes_win", "points": ["t0", ...],
//                 "arcs": [["t0", "c_poll", "Poll"], ...],
//                 "valuation": {"t_yes": ["yes"]},
//                 "leaf_payoffs": {"t_yes_rep": 200}}],
//     "accessibility": {"belief": {"w@t": ["b_yes_win", ...]},
//                       "goal": {...}, "intention": {...},
//                       "intention_by": {"maxexpval": {"w@t": [...]}}},
//     "prob": {"w@t": {"b_yes_win": 0.336, ...}}
//   }
//
// Only "designated" and "worlds" are required. Unknown fields are errors.

/// Schema-checked parse. Structural validity is left to
/// validate_interpretation(). Throws ParseError.
Interpretation parse_model(const std::string& text);
Interpretation load_model(const std::string& path);

/// Canonical, deterministic JSON text (sorted keys, two-space indent).
std::string dump_model(const Interpretation& m);
void store_model(const Interpretation& m, const std::string& path);

}  // namespace bdi
