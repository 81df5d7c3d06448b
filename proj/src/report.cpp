#include "edubandit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "json.hpp"

namespace edubandit {

namespace {

using nlohmann::ordered_json;

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw OutputError("failed writing " + path.string());
}

ordered_json environment_json(const EnvironmentChoice& environment) {
  ordered_json j;
  if (const auto* env = std::get_if<EnvironmentSpec>(&environment)) {
    j["kind"] = "category";
    j["label"] = env->label();
    j["category_id"] = env->category_id();
    j["arm_pass_prob"] = env->arm_pass_prob();
  } else {
    j["kind"] = "cohort";
    j["weights"] = std::get<CohortSpec>(environment).weights();
  }
  return j;
}

ordered_json spec_to_json(const ExperimentSpec& spec) {
  ordered_json j;
  j["agent"] = std::string(to_string(spec.agent));
  if (spec.agent == AgentKind::epsilon_greedy) j["epsilon"] = spec.params.epsilon;
  if (spec.agent == AgentKind::ucb) j["ucb_c"] = spec.params.ucb_c;
  j["environment"] = environment_json(spec.environment);
  j["horizon"] = spec.horizon;
  j["runs"] = spec.n_runs;
  j["seed"] = spec.base_seed;
  j["ci_level"] = spec.ci_level;
  j["gamma"] = spec.gamma;
  return j;
}

}  // namespace

double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("percentile of an empty sample");
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Aggregator::Aggregator(std::size_t horizon, std::size_t arm_count)
    : histograms_(horizon), cumulative_sum_(horizon, 0), action_counts_(arm_count, 0) {
  if (horizon == 0) throw std::invalid_argument("aggregator horizon must be >= 1");
  if (arm_count == 0) throw std::invalid_argument("aggregator needs at least one arm");
}

void Aggregator::add(const Trajectory& traj) {
  if (traj.horizon() != horizon() || traj.cumulative.size() != horizon()) {
    throw std::invalid_argument("trajectory horizon " + std::to_string(traj.horizon()) +
                                " does not match aggregator horizon " +
                                std::to_string(horizon()));
  }
  for (std::uint32_t a : traj.actions) {
    if (a >= action_counts_.size()) throw std::invalid_argument("trajectory action out of range");
  }
  for (std::size_t t = 0; t < horizon(); ++t) {
    const std::uint32_t v = traj.cumulative[t];
    auto& hist = histograms_[t];
    if (hist.size() <= v) hist.resize(static_cast<std::size_t>(v) + 1, 0);
    ++hist[v];
    cumulative_sum_[t] += v;
    ++action_counts_[traj.actions[t]];
  }
  ++runs_;
}

void Aggregator::merge(const Aggregator& other) {
  if (other.horizon() != horizon() || other.action_counts_.size() != action_counts_.size()) {
    throw std::invalid_argument("cannot merge aggregators of different shape");
  }
  for (std::size_t t = 0; t < horizon(); ++t) {
    auto& hist = histograms_[t];
    const auto& src = other.histograms_[t];
    if (hist.size() < src.size()) hist.resize(src.size(), 0);
    for (std::size_t v = 0; v < src.size(); ++v) hist[v] += src[v];
    cumulative_sum_[t] += other.cumulative_sum_[t];
  }
  for (std::size_t a = 0; a < action_counts_.size(); ++a) action_counts_[a] += other.action_counts_[a];
  runs_ += other.runs_;
}

std::uint32_t Aggregator::order_statistic(std::size_t episode, std::uint64_t k) const {
  if (k >= runs_) throw std::out_of_range("order statistic beyond run count");
  const auto& hist = histograms_.at(episode);
  std::uint64_t seen = 0;
  for (std::size_t v = 0; v < hist.size(); ++v) {
    seen += hist[v];
    if (k < seen) return static_cast<std::uint32_t>(v);
  }
  throw std::logic_error("histogram count mismatch");
}

double Aggregator::percentile(std::size_t episode, double q) const {
  if (runs_ == 0) throw std::invalid_argument("percentile of an empty aggregator");
  const double h = static_cast<double>(runs_ - 1) * q;
  const auto lo = static_cast<std::uint64_t>(std::floor(h));
  const std::uint64_t hi = std::min<std::uint64_t>(lo + 1, runs_ - 1);
  const double x_lo = order_statistic(episode, lo);
  const double x_hi = order_statistic(episode, hi);
  return x_lo + (h - static_cast<double>(lo)) * (x_hi - x_lo);
}

AggregateResult Aggregator::finish(const ExperimentSpec& spec) const {
  if (runs_ == 0) throw std::invalid_argument("cannot aggregate zero runs");
  if (!(spec.ci_level > 0.0 && spec.ci_level < 1.0)) {
    throw std::invalid_argument("ci_level must lie in (0, 1)");
  }
  const std::size_t horizon_len = horizon();
  const auto n = static_cast<double>(runs_);
  const double q_lo = (1.0 - spec.ci_level) / 2.0;
  const double q_hi = 1.0 - q_lo;

  AggregateResult r;
  r.episodes = horizon_len;
  r.n_runs = runs_;
  r.mean_cumulative.resize(horizon_len);
  r.ci_lower.resize(horizon_len);
  r.ci_upper.resize(horizon_len);
  r.mean_regret.resize(horizon_len);
  r.optimal_mean = optimal_mean_reward(spec.environment);

  double discount = 1.0;
  std::uint64_t previous_sum = 0;
  for (std::size_t t = 0; t < horizon_len; ++t) {
    const double mean = static_cast<double>(cumulative_sum_[t]) / n;
    r.mean_cumulative[t] = mean;
    r.ci_lower[t] = std::min(percentile(t, q_lo), mean);
    r.ci_upper[t] = std::max(percentile(t, q_hi), mean);
    r.mean_regret[t] = static_cast<double>(t + 1) * r.optimal_mean - mean;
    const double mean_reward = static_cast<double>(cumulative_sum_[t] - previous_sum) / n;
    r.discounted_return_mean += discount * mean_reward;
    discount *= spec.gamma;
    previous_sum = cumulative_sum_[t];
  }

  const auto h = static_cast<double>(horizon_len);
  r.mean_reward_rate = r.mean_cumulative.back() / h;
  r.rate_ci_lower = r.ci_lower.back() / h;
  r.rate_ci_upper = r.ci_upper.back() / h;

  r.action_counts = action_counts_;
  const auto pulls = static_cast<double>(
      std::accumulate(action_counts_.begin(), action_counts_.end(), std::uint64_t{0}));
  r.action_frequency.reserve(action_counts_.size());
  for (std::uint64_t c : action_counts_) r.action_frequency.push_back(static_cast<double>(c) / pulls);
  return r;
}

AggregateResult aggregate(std::span<const Trajectory> trajectories, const ExperimentSpec& spec) {
  if (trajectories.empty()) throw std::invalid_argument("aggregate needs at least one trajectory");
  const std::size_t horizon = trajectories.front().horizon();
  if (horizon == 0) throw std::invalid_argument("trajectories must be nonempty");
  Aggregator acc(horizon, spec.arm_count());
  for (const auto& traj : trajectories) {
    if (traj.horizon() != horizon) {
      throw std::invalid_argument("trajectories have mismatched horizons");
    }
    acc.add(traj);
  }
  return acc.finish(spec);
}

std::vector<double> action_distribution(std::span<const Trajectory> trajectories,
                                        std::size_t arm_count) {
  std::vector<std::uint64_t> counts(arm_count, 0);
  std::uint64_t total = 0;
  for (const auto& traj : trajectories) {
    for (std::uint32_t a : traj.actions) {
      if (a >= arm_count) throw std::invalid_argument("trajectory action out of range");
      ++counts[a];
      ++total;
    }
  }
  if (total == 0) throw std::invalid_argument("action_distribution needs at least one pull");
  std::vector<double> freq;
  freq.reserve(arm_count);
  for (std::uint64_t c : counts) freq.push_back(static_cast<double>(c) / static_cast<double>(total));
  return freq;
}

std::string curves_csv(const AggregateResult& result) {
  std::string out = "episode,mean_cum_reward,ci_lower,ci_upper,mean_regret\n";
  out.reserve(out.size() + result.episodes * 56);
  for (std::size_t t = 0; t < result.episodes; ++t) {
    out += std::to_string(t + 1);
    for (double v : {result.mean_cumulative[t], result.ci_lower[t], result.ci_upper[t],
                     result.mean_regret[t]}) {
      out += ',';
      out += fixed6(v);
    }
    out += '\n';
  }
  return out;
}

void write_curves_csv(const AggregateResult& result, const std::filesystem::path& path) {
  write_text(path, curves_csv(result));
}

std::string spec_json(const ExperimentSpec& spec) { return spec_to_json(spec).dump(2) + "\n"; }

void write_summary_json(const AggregateResult& result, const ExperimentSpec& spec,
                        const std::filesystem::path& path) {
  ordered_json j;
  j["engine"] = "edubandit";
  j["engine_version"] = kEngineVersion;
  j["base_seed"] = spec.base_seed;
  j["spec"] = spec_to_json(spec);
  j["episodes"] = result.episodes;
  j["n_runs"] = result.n_runs;
  j["mean_reward_rate"] = result.mean_reward_rate;
  j["rate_ci"] = {result.rate_ci_lower, result.rate_ci_upper};
  ordered_json freq;
  ordered_json counts;
  for (std::size_t a = 0; a < result.action_frequency.size(); ++a) {
    freq[std::to_string(a + 1)] = result.action_frequency[a];
    counts[std::to_string(a + 1)] = result.action_counts[a];
  }
  j["action_frequency"] = freq;
  j["action_counts"] = counts;
  j["optimal_mean_reward"] = result.optimal_mean;
  j["final_mean_regret"] = result.mean_regret.back();
  j["discounted_return_mean"] = result.discounted_return_mean;
  write_text(path, j.dump(2) + "\n");
}

void write_action_counts_csv(const AggregateResult& result, const std::filesystem::path& path) {
  std::string out = "action,count\n";
  for (std::size_t a = 0; a < result.action_counts.size(); ++a) {
    out += std::to_string(a + 1) + ',' + std::to_string(result.action_counts[a]) + '\n';
  }
  write_text(path, out);
}

void write_raw_csv(std::span<const Trajectory> trajectories, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << "run,episode,action,reward\n";
  std::string line;
  for (std::size_t run = 0; run < trajectories.size(); ++run) {
    const auto& traj = trajectories[run];
    for (std::size_t t = 0; t < traj.horizon(); ++t) {
      line = std::to_string(run) + ',' + std::to_string(t + 1) + ',' +
             std::to_string(traj.actions[t] + 1) + ',' + std::to_string(traj.rewards[t]) + '\n';
      out << line;
    }
  }
  out.flush();
  if (!out) throw OutputError("failed writing " + path.string());
}

}  // namespace edubandit
