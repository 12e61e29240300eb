#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bdi/interpretation.hpp"

namespace bdi {

/// Containment direction for the second conjunct of C3 and C4.
///
/// Prose: every goal world is a sub-world of some belief world (and every
/// intention world of some goal world). Literal: some belief world is a
/// sub-world of every goal world, i.e. the containment flipped.
enum class RealismDirection { Prose, Literal };

struct ConditionResult {
  std::vector<std::string> offenders;
  bool pass() const { return offenders.empty(); }
};

struct ConditionReport {
  ConditionResult c1;
  ConditionResult c2;
  ConditionResult c3;
  ConditionResult c4;
  bool pass() const { return c1.pass() && c2.pass() && c3.pass() && c4.pass(); }
};

struct ConditionOptions {
  RealismDirection direction = RealismDirection::Prose;
  /// Which intention relation C4 reads; the untagged one when empty.
  std::optional<Procedure> procedure;
};

/// C1: belief worlds that carry their own distribution at s.time agree with
///     the distribution at s.
/// C2: the distribution at s sums to one over the belief set.
/// C3: every belief world has a goal sub-world; every goal world sits below
///     some belief world (direction-dependent).
/// C4: the same between goal and intention worlds.
ConditionReport check_conditions(const Interpretation& m, const Situation& s,
                                 const ConditionOptions& options = {});

}  // namespace bdi
