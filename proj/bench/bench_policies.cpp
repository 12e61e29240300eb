// Serial against OpenMP policy scoring on a generated tree with a large
// policy space.

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "bdi/generate.hpp"
#include "bdi/policy.hpp"
#include "bdi/transform.hpp"

namespace {

struct Workload {
  bdi::Interpretation model;
  std::unique_ptr<bdi::PolicyProblem> problem;
  bdi::PolicyTable table;
};

// First generated tree with at least 200000 policies.
const Workload& workload() {
  static const Workload w = [] {
    bdi::GeneratorOptions options;
    options.max_depth = 7;
    options.max_variables = 3;
    options.max_events = 3;
    options.early_stop_prob = 0.05;
    std::mt19937_64 rng(11);
    for (;;) {
      Workload out;
      out.model = bdi::transform(bdi::random_tree(rng, options)).interpretation;
      try {
        out.problem = std::make_unique<bdi::PolicyProblem>(out.model, out.model.designated);
        out.table = bdi::enumerate_policies(*out.problem, std::size_t{1} << 21);
      } catch (const bdi::Error&) {
        continue;
      }
      if (out.table.count >= 200000) return out;
    }
  }();
  return w;
}

void score(benchmark::State& state, bool parallel, bdi::Procedure proc) {
  const auto& w = workload();
  for (auto _ : state) {
    auto scores = parallel ? bdi::score_policies_parallel(*w.problem, w.table, proc)
                           : bdi::score_policies_serial(*w.problem, w.table, proc);
    benchmark::DoNotOptimize(scores.data());
  }
  state.counters["policies"] = static_cast<double>(w.table.count);
  state.counters["worlds"] = static_cast<double>(w.problem->world_count());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.table.count));
}

}  // namespace

BENCHMARK_CAPTURE(score, serial_maxexpval, false, bdi::Procedure::MaxExpVal)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(score, parallel_maxexpval, true, bdi::Procedure::MaxExpVal)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(score, serial_maximin, false, bdi::Procedure::Maximin)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(score, parallel_maximin, true, bdi::Procedure::Maximin)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
