#pragma once

// Template definitions for simulate.hpp.

#include <limits>
#include <string>

namespace edubandit {

template <class MakePolicy>
AggregateResult run_and_aggregate_with(const ExperimentSpec& spec, MakePolicy&& make_policy,
                                       int workers) {
  spec.validate();
  const int threads = resolve_workers(workers);
  const auto n = static_cast<std::int64_t>(spec.n_runs);

  Aggregator total(spec.horizon, spec.arm_count());
  std::int64_t failed_run = std::numeric_limits<std::int64_t>::max();
  std::string failure;

#pragma omp parallel num_threads(threads)
  {
    Aggregator local(spec.horizon, spec.arm_count());
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        local.add(run_trajectory_with(spec, static_cast<std::uint64_t>(i), make_policy));
      } catch (const std::exception& e) {
#pragma omp critical(edubandit_failure)
        if (i < failed_run) {
          failed_run = i;
          failure = e.what();
        }
      }
    }
    // Integer accumulators: merge order does not affect the result.
#pragma omp critical(edubandit_merge)
    total.merge(local);
  }

  if (failed_run != std::numeric_limits<std::int64_t>::max()) {
    throw RunFailure(static_cast<std::uint64_t>(failed_run), failure);
  }
  return total.finish(spec);
}

}  // namespace edubandit
