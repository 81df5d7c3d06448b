#include "edubandit/agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edubandit {

std::string_view to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::random:
      return "random";
    case AgentKind::epsilon_greedy:
      return "epsilon-greedy";
    case AgentKind::ucb:
      return "ucb";
  }
  return "unknown";
}

std::optional<AgentKind> parse_agent_kind(std::string_view name) {
  if (name == "random") return AgentKind::random;
  if (name == "epsilon-greedy" || name == "epsilon_greedy") return AgentKind::epsilon_greedy;
  if (name == "ucb") return AgentKind::ucb;
  return std::nullopt;
}

Agent::Agent(AgentKind kind, std::size_t arm_count, AgentParams params)
    : kind_(kind),
      params_(params),
      pull_count_(arm_count, 0),
      reward_sum_(arm_count, 0),
      value_estimate_(arm_count, 0.0) {
  if (arm_count == 0) throw std::invalid_argument("agent needs at least one arm");
  if (!(params.epsilon >= 0.0 && params.epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  if (!(params.ucb_c >= 0.0) || !std::isfinite(params.ucb_c)) {
    throw std::invalid_argument("ucb_c must be a nonnegative finite number");
  }
}

double Agent::ucb_score(std::size_t arm) const {
  const auto pulls = static_cast<double>(pull_count_.at(arm));
  const double bonus = std::sqrt(std::log(static_cast<double>(total_steps_)) / pulls);
  return value_estimate_[arm] + params_.ucb_c * bonus;
}

std::vector<std::size_t> argmax_set(std::span<const double> scores) {
  std::vector<std::size_t> best;
  if (scores.empty()) return best;
  const double top = *std::max_element(scores.begin(), scores.end());
  for (std::size_t a = 0; a < scores.size(); ++a) {
    if (scores[a] == top) best.push_back(a);
  }
  return best;
}

// Uniform choice among the arms whose score equals the maximum exactly.
std::size_t Agent::pick_maximizer(std::span<const double> scores, double u) {
  const double top = *std::max_element(scores.begin(), scores.end());
  const auto ties = static_cast<std::size_t>(std::count(scores.begin(), scores.end(), top));
  std::size_t target = RngStream::scale_to_index(u, ties);
  for (std::size_t a = 0; a < scores.size(); ++a) {
    if (scores[a] != top) continue;
    if (target == 0) return a;
    --target;
  }
  return scores.size() - 1;
}

std::size_t Agent::select_action(RngStream& rng) const {
  const std::size_t arms = arm_count();
  switch (kind_) {
    case AgentKind::random:
      return rng.uniform_index(arms);

    case AgentKind::epsilon_greedy: {
      const double coin = rng.uniform();
      const double choice = rng.uniform();
      if (coin < params_.epsilon) return RngStream::scale_to_index(choice, arms);
      return pick_maximizer(value_estimate_, choice);
    }

    case AgentKind::ucb: {
      const double choice = rng.uniform();
      const auto unpulled = std::find(pull_count_.begin(), pull_count_.end(), 0);
      if (unpulled != pull_count_.end()) {
        return static_cast<std::size_t>(unpulled - pull_count_.begin());
      }
      std::vector<double> scores(arms);
      for (std::size_t a = 0; a < arms; ++a) scores[a] = ucb_score(a);
      return pick_maximizer(scores, choice);
    }
  }
  return 0;
}

void Agent::update(std::size_t action, RewardSample reward) {
  if (action >= arm_count()) {
    throw std::invalid_argument("action " + std::to_string(action) + " out of range for " +
                                std::to_string(arm_count()) + " arms");
  }
  ++pull_count_[action];
  ++total_steps_;
  reward_sum_[action] += reward.value;
  // Stored as sum / count so that arms with equal means compare equal
  // exactly, independent of reward order.
  value_estimate_[action] =
      static_cast<double>(reward_sum_[action]) / static_cast<double>(pull_count_[action]);
}

}  // namespace edubandit
