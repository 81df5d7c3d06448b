#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edubandit/environment.hpp"
#include "edubandit/rng.hpp"

namespace edubandit {

enum class AgentKind { random, epsilon_greedy, ucb };

std::string_view to_string(AgentKind kind);
/// Accepts "random", "epsilon-greedy" (or "epsilon_greedy") and "ucb".
std::optional<AgentKind> parse_agent_kind(std::string_view name);

struct AgentParams {
  double epsilon = 0.01;
  double ucb_c = std::numbers::sqrt2;

  friend bool operator==(const AgentParams&, const AgentParams&) = default;
};

/// Learning state of one bandit agent.
///
/// select_action() draws from the caller's stream and never mutates the
/// agent; update() folds one observed reward into the per-arm statistics.
/// Per-step draw counts are fixed per kind so that shared streams stay
/// aligned: random 1, epsilon-greedy 2 (explore coin, arm choice), ucb 1
/// (tie-break, consumed even during the forced initial round).
class Agent {
 public:
  /// Throws std::invalid_argument for arm_count == 0, epsilon outside [0, 1]
  /// or a negative ucb_c.
  Agent(AgentKind kind, std::size_t arm_count, AgentParams params = {});

  std::size_t select_action(RngStream& rng) const;
  void update(std::size_t action, RewardSample reward);

  AgentKind kind() const noexcept { return kind_; }
  const AgentParams& params() const noexcept { return params_; }
  std::size_t arm_count() const noexcept { return pull_count_.size(); }
  const std::vector<std::uint64_t>& pull_count() const noexcept { return pull_count_; }
  const std::vector<double>& value_estimate() const noexcept { return value_estimate_; }
  std::uint64_t total_steps() const noexcept { return total_steps_; }

  /// UCB1 score of a pulled arm: estimate + c * sqrt(ln(total_steps) / pulls).
  double ucb_score(std::size_t arm) const;

  friend bool operator==(const Agent&, const Agent&) = default;

 private:
  static std::size_t pick_maximizer(std::span<const double> scores, double u);

  AgentKind kind_;
  AgentParams params_;
  std::vector<std::uint64_t> pull_count_;
  std::vector<std::uint64_t> reward_sum_;
  std::vector<double> value_estimate_;
  std::uint64_t total_steps_ = 0;
};

/// Indices whose score equals the maximum exactly, ascending.
std::vector<std::size_t> argmax_set(std::span<const double> scores);

inline Agent new_agent(AgentKind kind, std::size_t arm_count, AgentParams params = {}) {
  return Agent(kind, arm_count, params);
}

}  // namespace edubandit
