#include "edubandit/simulate.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>

namespace edubandit {

void ExperimentSpec::validate() const {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (horizon > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("horizon too large");
  }
  if (n_runs < 1) throw std::invalid_argument("n_runs must be >= 1");
  if (!(ci_level > 0.0 && ci_level < 1.0)) {
    throw std::invalid_argument("ci_level must lie in (0, 1)");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  (void)Agent(agent, arm_count(), params);
}

std::size_t ExperimentSpec::arm_count() const {
  if (const auto* env = std::get_if<EnvironmentSpec>(&environment)) return env->arm_count();
  return make_category_env(1).arm_count();
}

std::string ExperimentSpec::environment_label() const {
  if (const auto* env = std::get_if<EnvironmentSpec>(&environment)) return env->label();
  return "cohort";
}

double optimal_mean_reward(const EnvironmentChoice& environment) {
  if (const auto* env = std::get_if<EnvironmentSpec>(&environment)) {
    return optimal_value(*env).value;
  }
  const auto& weights = std::get<CohortSpec>(environment).weights();
  double mean = 0.0;
  for (int k = 1; k <= kCategoryCount; ++k) {
    mean += weights[static_cast<std::size_t>(k - 1)] * optimal_value(make_category_env(k)).value;
  }
  return mean;
}

int resolve_workers(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

namespace {

auto agent_factory(const ExperimentSpec& spec) {
  return [kind = spec.agent, params = spec.params](std::size_t arms) {
    return Agent(kind, arms, params);
  };
}

}  // namespace

Trajectory run_trajectory(const ExperimentSpec& spec, std::uint64_t run_index) {
  return run_trajectory_with(spec, run_index, agent_factory(spec));
}

std::vector<Trajectory> run_experiment(const ExperimentSpec& spec, int workers) {
  spec.validate();
  const auto n = static_cast<std::int64_t>(spec.n_runs);
  std::vector<Trajectory> out(spec.n_runs);
  const auto make_policy = agent_factory(spec);

  std::int64_t failed_run = std::numeric_limits<std::int64_t>::max();
  std::string failure;

#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] =
          run_trajectory_with(spec, static_cast<std::uint64_t>(i), make_policy);
    } catch (const std::exception& e) {
#pragma omp critical(edubandit_failure)
      if (i < failed_run) {
        failed_run = i;
        failure = e.what();
      }
    }
  }

  if (failed_run != std::numeric_limits<std::int64_t>::max()) {
    throw RunFailure(static_cast<std::uint64_t>(failed_run), failure);
  }
  return out;
}

AggregateResult run_and_aggregate(const ExperimentSpec& spec, int workers) {
  return run_and_aggregate_with(spec, agent_factory(spec), workers);
}

}  // namespace edubandit
