#include "edubandit/environment.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace edubandit {

namespace {

void check_action(const EnvironmentSpec& env, std::size_t action) {
  if (action >= env.arm_count()) {
    throw std::invalid_argument("action " + std::to_string(action) + " out of range for " +
                                std::to_string(env.arm_count()) + " arms");
  }
}

}  // namespace

EnvironmentSpec::EnvironmentSpec(int category_id, std::vector<double> arm_pass_prob,
                                 std::string label)
    : category_id_(category_id), arm_pass_prob_(std::move(arm_pass_prob)), label_(std::move(label)) {
  if (arm_pass_prob_.empty()) {
    throw std::invalid_argument("environment needs at least one arm");
  }
  for (double p : arm_pass_prob_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("arm pass probability must lie in [0, 1]");
    }
  }
}

CohortSpec::CohortSpec(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.size() != static_cast<std::size_t>(kCategoryCount)) {
    throw std::invalid_argument("cohort needs exactly 4 category weights");
  }
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("cohort weights must be nonnegative");
    }
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("cohort weights must sum to 1");
  }
}

CohortSpec CohortSpec::from_unnormalized(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("cohort weights must be nonnegative");
    }
    total += w;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("cohort weights must not all be zero");
  }
  std::vector<double> normalized;
  normalized.reserve(weights.size());
  for (double w : weights) normalized.push_back(w / total);
  return CohortSpec(std::move(normalized));
}

EnvironmentSpec make_category_env(int category_id) {
  switch (category_id) {
    case 1:
      return EnvironmentSpec(1, {1.0, 1.0, 1.0, 1.0}, "cat1");
    case 2:
      return EnvironmentSpec(2, {0.5, 0.5, 1.0, 0.7}, "cat2");
    case 3:
      return EnvironmentSpec(3, {0.0, 0.0, 1.0, 0.25}, "cat3");
    case 4:
      return EnvironmentSpec(4, {0.0, 0.0, 0.5, 0.0}, "cat4");
    default:
      throw std::invalid_argument("category_id must be in 1..4, got " +
                                  std::to_string(category_id));
  }
}

CohortSpec default_cohort() { return CohortSpec::from_unnormalized({55.0, 20.0, 10.0, 5.0}); }

RewardSample step(const EnvironmentSpec& env, std::size_t action, RngStream& rng) {
  check_action(env, action);
  const double u = rng.uniform();
  return RewardSample{static_cast<std::uint8_t>(u < env.arm_pass_prob()[action] ? 1 : 0)};
}

double expected_reward(const EnvironmentSpec& env, std::size_t action) {
  check_action(env, action);
  return env.arm_pass_prob()[action];
}

OptimalValue optimal_value(const EnvironmentSpec& env) {
  OptimalValue best;
  best.value = env.arm_pass_prob().front();
  for (double p : env.arm_pass_prob()) best.value = std::max(best.value, p);
  for (std::size_t a = 0; a < env.arm_count(); ++a) {
    if (env.arm_pass_prob()[a] == best.value) best.argmax.push_back(a);
  }
  return best;
}

int sample_category(const CohortSpec& cohort, RngStream& rng) {
  return static_cast<int>(rng.categorical(cohort.weights())) + 1;
}

}  // namespace edubandit
