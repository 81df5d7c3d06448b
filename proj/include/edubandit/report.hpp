#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "edubandit/experiment.hpp"

namespace edubandit {

inline constexpr const char* kEngineVersion = "0.1.0";

/// Across-run summary of one experiment.
///
/// Bands are empirical percentiles across runs at (1 - level) / 2 and
/// 1 - (1 - level) / 2, using linear interpolation between order
/// statistics, widened if necessary so that they contain the mean.
struct AggregateResult {
  std::size_t episodes = 0;
  std::size_t n_runs = 0;
  std::vector<double> mean_cumulative;
  std::vector<double> ci_lower;
  std::vector<double> ci_upper;
  double mean_reward_rate = 0.0;
  double rate_ci_lower = 0.0;
  double rate_ci_upper = 0.0;
  std::vector<std::uint64_t> action_counts;
  std::vector<double> action_frequency;
  double optimal_mean = 0.0;          // per-episode expected reward of the best policy
  std::vector<double> mean_regret;    // (t + 1) * optimal_mean - mean_cumulative[t]
  double discounted_return_mean = 0.0;
};

/// Linear-interpolation percentile of sorted samples, q in [0, 1]:
/// h = (n - 1) q, x[floor h] + (h - floor h) (x[floor h + 1] - x[floor h]).
double percentile_sorted(std::span<const double> sorted, double q);

/// Mergeable accumulator over runs.
///
/// Cumulative rewards are small integers, so each episode keeps an exact
/// histogram of run values. Means and percentiles are read off the
/// histograms; merging adds counts, so the result is independent of the
/// order in which runs are folded. Memory is O(horizon^2) in the worst case
/// and independent of the number of runs.
class Aggregator {
 public:
  Aggregator(std::size_t horizon, std::size_t arm_count);

  void add(const Trajectory& traj);
  void merge(const Aggregator& other);

  std::size_t runs() const noexcept { return runs_; }
  std::size_t horizon() const noexcept { return histograms_.size(); }

  /// k-th smallest (0-based) run value of cumulative reward at `episode`.
  std::uint32_t order_statistic(std::size_t episode, std::uint64_t k) const;
  double percentile(std::size_t episode, double q) const;

  AggregateResult finish(const ExperimentSpec& spec) const;

  friend bool operator==(const Aggregator&, const Aggregator&) = default;

 private:
  std::size_t runs_ = 0;
  std::vector<std::vector<std::uint64_t>> histograms_;
  std::vector<std::uint64_t> cumulative_sum_;
  std::vector<std::uint64_t> action_counts_;
};

/// Throws std::invalid_argument for an empty input or unequal horizons.
AggregateResult aggregate(std::span<const Trajectory> trajectories, const ExperimentSpec& spec);

/// Fraction of all pulls, pooled over every episode of every run.
std::vector<double> action_distribution(std::span<const Trajectory> trajectories,
                                        std::size_t arm_count = 4);

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `episode,mean_cum_reward,ci_lower,ci_upper,mean_regret`, 1-based
/// episodes, fixed 6-decimal notation, LF endings.
void write_curves_csv(const AggregateResult& result, const std::filesystem::path& path);
void write_summary_json(const AggregateResult& result, const ExperimentSpec& spec,
                        const std::filesystem::path& path);
/// `action,count` with 1-based action labels.
void write_action_counts_csv(const AggregateResult& result, const std::filesystem::path& path);
/// `run,episode,action,reward`, 1-based episodes and actions.
void write_raw_csv(std::span<const Trajectory> trajectories, const std::filesystem::path& path);

std::string curves_csv(const AggregateResult& result);
/// Resolved experiment parameters as pretty-printed JSON.
std::string spec_json(const ExperimentSpec& spec);

}  // namespace edubandit
