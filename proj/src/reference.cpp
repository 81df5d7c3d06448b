#include "edubandit/reference.hpp"

#include <algorithm>
#include <stdexcept>

#include "edubandit/simulate.hpp"

namespace edubandit::reference {

std::vector<Trajectory> run_experiment_serial(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<Trajectory> out;
  out.reserve(spec.n_runs);
  for (std::size_t i = 0; i < spec.n_runs; ++i) out.push_back(run_trajectory(spec, i));
  return out;
}

AggregateResult aggregate_serial(std::span<const Trajectory> trajectories,
                                 const ExperimentSpec& spec) {
  if (trajectories.empty()) throw std::invalid_argument("aggregate needs at least one trajectory");
  const std::size_t horizon = trajectories.front().horizon();
  for (const auto& traj : trajectories) {
    if (traj.horizon() != horizon) throw std::invalid_argument("mismatched horizons");
  }
  const std::size_t runs = trajectories.size();
  const auto n = static_cast<double>(runs);
  const double q_lo = (1.0 - spec.ci_level) / 2.0;
  const double q_hi = 1.0 - q_lo;

  AggregateResult r;
  r.episodes = horizon;
  r.n_runs = runs;
  r.optimal_mean = optimal_mean_reward(spec.environment);
  std::vector<double> column(runs);
  for (std::size_t t = 0; t < horizon; ++t) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < runs; ++i) {
      sum += trajectories[i].cumulative[t];
      column[i] = trajectories[i].cumulative[t];
    }
    std::sort(column.begin(), column.end());
    const double mean = static_cast<double>(sum) / n;
    r.mean_cumulative.push_back(mean);
    r.ci_lower.push_back(std::min(percentile_sorted(column, q_lo), mean));
    r.ci_upper.push_back(std::max(percentile_sorted(column, q_hi), mean));
    r.mean_regret.push_back(static_cast<double>(t + 1) * r.optimal_mean - mean);
  }
  const auto h = static_cast<double>(horizon);
  r.mean_reward_rate = r.mean_cumulative.back() / h;
  r.rate_ci_lower = r.ci_lower.back() / h;
  r.rate_ci_upper = r.ci_upper.back() / h;

  r.action_counts.assign(spec.arm_count(), 0);
  double discounted_total = 0.0;
  for (const auto& traj : trajectories) {
    double discount = 1.0;
    double ret = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) {
      ++r.action_counts.at(traj.actions[t]);
      ret += discount * traj.rewards[t];
      discount *= spec.gamma;
    }
    discounted_total += ret;
  }
  r.discounted_return_mean = discounted_total / n;
  const double pulls = n * h;
  for (std::uint64_t c : r.action_counts) r.action_frequency.push_back(static_cast<double>(c) / pulls);
  return r;
}

}  // namespace edubandit::reference
