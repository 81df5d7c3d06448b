#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "edubandit/experiment.hpp"
#include "edubandit/report.hpp"
#include "edubandit/rng.hpp"

namespace edubandit {

/// Anything that can stand in for an Agent inside a run.
template <class P>
concept Policy = requires(P p, const P cp, RngStream& rng, std::size_t a, RewardSample r) {
  { cp.select_action(rng) } -> std::convertible_to<std::size_t>;
  p.update(a, r);
};

/// Raised when a run cannot complete, e.g. on allocation failure.
class RunFailure : public std::runtime_error {
 public:
  RunFailure(std::uint64_t run_index, const std::string& what)
      : std::runtime_error("run " + std::to_string(run_index) + " failed: " + what),
        run_index_(run_index) {}

  std::uint64_t run_index() const noexcept { return run_index_; }

 private:
  std::uint64_t run_index_;
};

/// Stream seeds of one run. The agent/environment stream is derived from
/// (base_seed, run_index); the cohort category stream is a substream of it,
/// so a cohort with a single nonzero weight replays the matching
/// single-environment run exactly.
inline RngStream run_stream(std::uint64_t base_seed, std::uint64_t run_index) {
  return RngStream(derive_seed(base_seed, run_index));
}
inline RngStream cohort_stream(std::uint64_t base_seed, std::uint64_t run_index) {
  return RngStream(derive_seed(derive_seed(base_seed, run_index), 0));
}

/// Runs one trajectory with policies built by `make_policy(arm_count)`.
/// Per episode: [cohort: sample category] -> select_action -> step -> update.
template <class MakePolicy>
  requires Policy<std::invoke_result_t<MakePolicy&, std::size_t>>
Trajectory run_trajectory_with(const ExperimentSpec& spec, std::uint64_t run_index,
                               MakePolicy&& make_policy) {
  if (run_index >= spec.n_runs) {
    throw std::invalid_argument("run_index " + std::to_string(run_index) + " >= n_runs " +
                                std::to_string(spec.n_runs));
  }
  Trajectory traj;
  const std::size_t horizon = spec.horizon;
  traj.actions.resize(horizon);
  traj.rewards.resize(horizon);
  traj.cumulative.resize(horizon);

  RngStream rng = run_stream(spec.base_seed, run_index);
  std::uint32_t total = 0;

  if (const auto* env = std::get_if<EnvironmentSpec>(&spec.environment)) {
    auto policy = make_policy(env->arm_count());
    for (std::size_t t = 0; t < horizon; ++t) {
      const std::size_t a = policy.select_action(rng);
      const RewardSample r = step(*env, a, rng);
      policy.update(a, r);
      total += r.value;
      traj.actions[t] = static_cast<std::uint32_t>(a);
      traj.rewards[t] = r.value;
      traj.cumulative[t] = total;
    }
    return traj;
  }

  const auto& cohort = std::get<CohortSpec>(spec.environment);
  RngStream category_rng = cohort_stream(spec.base_seed, run_index);
  const std::array<EnvironmentSpec, kCategoryCount> envs{make_category_env(1), make_category_env(2),
                                                         make_category_env(3), make_category_env(4)};
  using P = std::invoke_result_t<MakePolicy&, std::size_t>;
  std::vector<P> policies;
  policies.reserve(kCategoryCount);
  for (const auto& env : envs) policies.push_back(make_policy(env.arm_count()));

  traj.categories.resize(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    const int category = sample_category(cohort, category_rng);
    const auto& env = envs[static_cast<std::size_t>(category - 1)];
    auto& policy = policies[static_cast<std::size_t>(category - 1)];
    const std::size_t a = policy.select_action(rng);
    const RewardSample r = step(env, a, rng);
    policy.update(a, r);
    total += r.value;
    traj.actions[t] = static_cast<std::uint32_t>(a);
    traj.rewards[t] = r.value;
    traj.cumulative[t] = total;
    traj.categories[t] = static_cast<std::uint8_t>(category);
  }
  return traj;
}

/// One run of the spec's own agent. Deterministic in (spec, run_index).
Trajectory run_trajectory(const ExperimentSpec& spec, std::uint64_t run_index);

/// All n_runs trajectories, indexed by run. `workers` = 0 uses every
/// available thread; the result does not depend on it.
std::vector<Trajectory> run_experiment(const ExperimentSpec& spec, int workers = 0);

/// Runs and folds every trajectory into per-thread accumulators that are
/// merged at the end. Memory does not grow with n_runs.
AggregateResult run_and_aggregate(const ExperimentSpec& spec, int workers = 0);

/// Same as run_and_aggregate, for a custom policy factory.
template <class MakePolicy>
AggregateResult run_and_aggregate_with(const ExperimentSpec& spec, MakePolicy&& make_policy,
                                       int workers = 0);

int resolve_workers(int workers);

}  // namespace edubandit

#include "edubandit/simulate_impl.hpp"
