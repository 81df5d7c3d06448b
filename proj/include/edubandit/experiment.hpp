#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "edubandit/agent.hpp"
#include "edubandit/environment.hpp"

namespace edubandit {

/// Either one category environment (or a custom one) or a cohort mixture in
/// which every episode samples a category and routes to that category's own
/// agent.
using EnvironmentChoice = std::variant<EnvironmentSpec, CohortSpec>;

struct ExperimentSpec {
  AgentKind agent = AgentKind::random;
  AgentParams params{};
  EnvironmentChoice environment = make_category_env(1);
  std::size_t horizon = 500;
  std::size_t n_runs = 10'000;
  std::uint64_t base_seed = 0;
  double ci_level = 0.95;
  double gamma = 1.0;

  /// Throws std::invalid_argument on the first violated field constraint.
  void validate() const;

  bool is_cohort() const noexcept { return std::holds_alternative<CohortSpec>(environment); }
  std::size_t arm_count() const;
  /// "cat1".."cat4", "cohort", or the custom environment's label.
  std::string environment_label() const;
};

/// Expected per-episode reward of the best fixed policy. In cohort mode the
/// optimum knows each student's category: sum_k w_k * max_a p_k(a).
double optimal_mean_reward(const EnvironmentChoice& environment);

/// One run. cumulative[t] is the number of passes over episodes 0..t.
struct Trajectory {
  std::vector<std::uint32_t> actions;
  std::vector<std::uint8_t> rewards;
  std::vector<std::uint32_t> cumulative;
  std::vector<std::uint8_t> categories;  // cohort mode only

  std::size_t horizon() const noexcept { return actions.size(); }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

}  // namespace edubandit
