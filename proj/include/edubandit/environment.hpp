#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "edubandit/rng.hpp"

namespace edubandit {

inline constexpr int kCategoryCount = 4;

/// Pass/fail outcome of one recommendation. 1 means the student passed.
struct RewardSample {
  std::uint8_t value = 0;

  friend bool operator==(const RewardSample&, const RewardSample&) = default;
};

/// A student category as a stationary Bernoulli bandit: arm k pays 1 with
/// probability arm_pass_prob[k]. The category is the only state, so the
/// transition function is the identity and is not stored.
class EnvironmentSpec {
 public:
  /// Throws std::invalid_argument if `arm_pass_prob` is empty or holds a
  /// value outside [0, 1]. category_id 0 marks a custom environment.
  EnvironmentSpec(int category_id, std::vector<double> arm_pass_prob, std::string label);

  int category_id() const noexcept { return category_id_; }
  std::size_t arm_count() const noexcept { return arm_pass_prob_.size(); }
  const std::vector<double>& arm_pass_prob() const noexcept { return arm_pass_prob_; }
  const std::string& label() const noexcept { return label_; }

  friend bool operator==(const EnvironmentSpec&, const EnvironmentSpec&) = default;

 private:
  int category_id_;
  std::vector<double> arm_pass_prob_;
  std::string label_;
};

/// Mixture of the four categories within a student cohort.
class CohortSpec {
 public:
  /// Weights must be nonnegative, one per category, and sum to 1 within 1e-12.
  explicit CohortSpec(std::vector<double> weights);

  /// Normalizes nonnegative weights (e.g. percentages) to sum to one.
  static CohortSpec from_unnormalized(const std::vector<double>& weights);

  const std::vector<double>& weights() const noexcept { return weights_; }

  friend bool operator==(const CohortSpec&, const CohortSpec&) = default;

 private:
  std::vector<double> weights_;
};

/// Built-in environment for student category 1..4.
EnvironmentSpec make_category_env(int category_id);

/// Cohort weights 55:20:10:5 normalized by their total of 90.
CohortSpec default_cohort();

/// Samples a pass/fail outcome. Always consumes exactly one uniform draw,
/// including for arms with probability 0 or 1.
RewardSample step(const EnvironmentSpec& env, std::size_t action, RngStream& rng);

double expected_reward(const EnvironmentSpec& env, std::size_t action);

struct OptimalValue {
  double value = 0.0;
  std::vector<std::size_t> argmax;  // every arm attaining `value`, ascending
};

OptimalValue optimal_value(const EnvironmentSpec& env);

/// Returns a category id in 1..4; consumes one uniform draw.
int sample_category(const CohortSpec& cohort, RngStream& rng);

}  // namespace edubandit
