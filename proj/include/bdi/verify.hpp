#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bdi/dtree.hpp"
#include "bdi/generate.hpp"

namespace bdi {

enum class TrialClass { MaxExpVal, MaximinRestricted };

std::string_view to_string(TrialClass c);
std::optional<TrialClass> parse_trial_class(std::string_view text);

/// Generator settings of a class. Maximin trials use single-occurrence
/// variables with independent tables.
GeneratorOptions generator_options(TrialClass c);

/// The generator state of trial `index` under `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t index);

struct TrialFailure {
  std::size_t trial = 0;
  std::string check;
  std::string detail;
  DecisionTree tree;
};

struct TrialStats {
  std::size_t goal_worlds = 0;
  std::size_t policies = 0;
  std::size_t intention_formulas = 0;
  std::size_t intention_formulas_false = 0;
};

/// Runs every check of the class on one tree; returns the first failure.
std::optional<TrialFailure> run_trial(const DecisionTree& dt, TrialClass c, std::mt19937_64& rng,
                                      TrialStats& stats);

struct VerifyReport {
  std::size_t trials = 0;
  std::vector<TrialFailure> failures;
  TrialStats stats;
  bool pass() const { return failures.empty(); }
};

/// Generates `trials` trees from `seed` and checks each one.
VerifyReport run_verify(std::size_t trials, std::uint64_t seed, TrialClass c);

}  // namespace bdi
