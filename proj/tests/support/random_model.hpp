#pragma once

#include <random>
#include <vector>

#include "bdi/interpretation.hpp"

namespace bdi::testing {

/// A small interpretation: two to four worlds cut from one random base tree
/// (so shared point ids agree), props from {p, q, r}, events from {a, b, c},
/// payoffs on most leaves, and belief / goal / intention entries with a
/// distribution at every situation. Both tagged intention relations are
/// filled too.
Interpretation random_model(std::mt19937_64& rng);

/// Every (world, point) pair of the model.
std::vector<Situation> all_situations(const Interpretation& m);

}  // namespace bdi::testing
