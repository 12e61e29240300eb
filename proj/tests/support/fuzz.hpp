#pragma once

#include <random>
#include <string>
#include <vector>

#include "bdi/formula.hpp"

namespace bdi::testing {

/// What the formula generator may draw from.
struct Vocabulary {
  std::vector<std::string> props{"p", "q", "r"};
  std::vector<std::string> events{"a", "b", "c"};
  bool modal = true;
  bool intend_tags = true;
  bool prob = true;
  bool payoff = true;
  bool sugar = true;  // INEVITABLE, ->, [], <=, <, =, conditional PROB
};

/// Random formulas built only through the smart constructors, so they are
/// in canonical form. `depth` bounds the nesting depth.
class FormulaFuzzer {
 public:
  FormulaFuzzer(std::uint64_t seed, Vocabulary vocabulary = {});

  StateFormula state(int depth);
  PathFormula path(int depth);
  EventExpr event(int depth);

  std::mt19937_64& rng() { return rng_; }

 private:
  int pick(int n);
  bool coin(double p);
  double coefficient();
  double bound();
  Comparator comparator();

  std::mt19937_64 rng_;
  Vocabulary v_;
};

}  // namespace bdi::testing
