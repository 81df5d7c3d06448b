#include <gtest/gtest.h>

#include <cmath>
#include <new>

#include "edubandit/reference.hpp"
#include "edubandit/simulate.hpp"
#include "oracle.hpp"

namespace edubandit {
namespace {

constexpr AgentKind kAllAgents[] = {AgentKind::random, AgentKind::epsilon_greedy, AgentKind::ucb};

ExperimentSpec make_spec(AgentKind agent, EnvironmentChoice env, std::size_t horizon,
                         std::size_t runs, std::uint64_t seed = 42) {
  ExperimentSpec spec;
  spec.agent = agent;
  spec.environment = std::move(env);
  spec.horizon = horizon;
  spec.n_runs = runs;
  spec.base_seed = seed;
  return spec;
}

struct FixedArm {
  std::size_t arm;
  std::size_t select_action(RngStream& rng) const {
    (void)rng.uniform();
    return arm;
  }
  void update(std::size_t, RewardSample) {}
};

TEST(ExperimentSpec, Validation) {
  ExperimentSpec spec;
  EXPECT_NO_THROW(spec.validate());
  EXPECT_EQ(spec.horizon, 500U);
  EXPECT_EQ(spec.n_runs, 10'000U);
  EXPECT_EQ(spec.ci_level, 0.95);
  EXPECT_EQ(spec.gamma, 1.0);

  auto bad = spec;
  bad.horizon = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.n_runs = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.ci_level = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.gamma = 1.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = spec;
  bad.agent = AgentKind::ucb;
  bad.params.ucb_c = -1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(RunTrajectory, Environment1PaysEveryEpisode) {
  for (AgentKind agent : kAllAgents) {
    const auto spec = make_spec(agent, make_category_env(1), 16, 4);
    for (std::uint64_t run = 0; run < 4; ++run) {
      const auto traj = run_trajectory(spec, run);
      for (std::uint32_t t = 0; t < 16; ++t) ASSERT_EQ(traj.cumulative[t], t + 1);
    }
  }
}

TEST(RunTrajectory, ReplayIsDeterministicAndMatchesDeterministicArms) {
  const auto env = make_category_env(3);
  for (AgentKind agent : kAllAgents) {
    const auto spec = make_spec(agent, env, 200, 3, 99);
    const auto first = run_trajectory(spec, 2);
    const auto again = run_trajectory(spec, 2);
    EXPECT_EQ(first, again);
    for (std::size_t t = 0; t < first.horizon(); ++t) {
      const double p = expected_reward(env, first.actions[t]);
      if (p == 0.0 || p == 1.0) ASSERT_EQ(first.rewards[t], static_cast<std::uint8_t>(p));
    }
  }
}

TEST(RunTrajectory, RandomOnCat4LongRunRate) {
  const auto spec = make_spec(AgentKind::random, make_category_env(4), 10'000, 1, 5);
  const auto traj = run_trajectory(spec, 0);
  EXPECT_NEAR(traj.cumulative.back() / 10'000.0, 0.125, 0.01);
}

TEST(RunTrajectory, Invariants) {
  RngStream gen(17);
  for (int trial = 0; trial < 60; ++trial) {
    const auto agent = kAllAgents[gen.uniform_index(3)];
    EnvironmentChoice env = make_category_env(1 + static_cast<int>(gen.uniform_index(4)));
    if (gen.uniform() < 0.25) env = default_cohort();
    const auto spec = make_spec(agent, env, 1 + gen.uniform_index(300), 5, gen.next_u64());
    const auto traj = run_trajectory(spec, gen.uniform_index(5));
    ASSERT_EQ(traj.cumulative.size(), spec.horizon);
    std::uint32_t prev = 0;
    for (std::size_t t = 0; t < spec.horizon; ++t) {
      ASSERT_LE(traj.rewards[t], 1);
      ASSERT_EQ(traj.cumulative[t] - prev, traj.rewards[t]);
      ASSERT_LE(traj.cumulative[t], t + 1);
      ASSERT_LT(traj.actions[t], 4U);
      prev = traj.cumulative[t];
    }
    EXPECT_EQ(traj.categories.size(), spec.is_cohort() ? spec.horizon : 0U);
  }
}

TEST(RunTrajectory, RejectsRunIndexBeyondRuns) {
  const auto spec = make_spec(AgentKind::random, make_category_env(2), 10, 3);
  EXPECT_THROW(run_trajectory(spec, 3), std::invalid_argument);
}

TEST(RunExperiment, SingletonEqualsRunZero) {
  const auto spec = make_spec(AgentKind::epsilon_greedy, make_category_env(2), 50, 1);
  const auto all = run_experiment(spec);
  ASSERT_EQ(all.size(), 1U);
  EXPECT_EQ(all[0], run_trajectory(spec, 0));
}

TEST(RunExperiment, ParallelMatchesSerialReference) {
  for (AgentKind agent : kAllAgents) {
    for (EnvironmentChoice env : {EnvironmentChoice(make_category_env(2)),
                                  EnvironmentChoice(make_category_env(4)),
                                  EnvironmentChoice(default_cohort())}) {
      const auto spec = make_spec(agent, env, 120, 300, 7);
      const auto serial = reference::run_experiment_serial(spec);
      EXPECT_EQ(run_experiment(spec, 8), serial);
      EXPECT_EQ(run_experiment(spec, 3), serial);

      const auto parallel = run_and_aggregate(spec, 8);
      const auto one = run_and_aggregate(spec, 1);
      const auto ref = reference::aggregate_serial(serial, spec);
      EXPECT_EQ(parallel.mean_cumulative, one.mean_cumulative);
      EXPECT_EQ(parallel.ci_lower, one.ci_lower);
      EXPECT_EQ(parallel.ci_upper, one.ci_upper);
      EXPECT_EQ(parallel.action_counts, one.action_counts);
      EXPECT_EQ(parallel.discounted_return_mean, one.discounted_return_mean);
      EXPECT_EQ(parallel.mean_cumulative, ref.mean_cumulative);
      EXPECT_EQ(parallel.ci_lower, ref.ci_lower);
      EXPECT_EQ(parallel.ci_upper, ref.ci_upper);
      EXPECT_EQ(parallel.mean_regret, ref.mean_regret);
      EXPECT_EQ(parallel.action_counts, ref.action_counts);
    }
  }
}

TEST(RunExperiment, RunsAreIndependentOfRunCount) {
  const auto small = make_spec(AgentKind::ucb, make_category_env(3), 80, 10, 3);
  auto large = small;
  large.n_runs = 57;
  const auto all = run_experiment(large, 4);
  for (std::uint64_t i = 0; i < small.n_runs; ++i) EXPECT_EQ(run_trajectory(small, i), all[i]);
  EXPECT_EQ(run_trajectory(large, 33), all[33]);
}

TEST(RunExperiment, ReportsFailingRunIndex) {
  const auto spec = make_spec(AgentKind::random, make_category_env(2), 20, 16, 8);
  const std::uint64_t poisoned = run_stream(spec.base_seed, 5).seed();
  struct Failing {
    std::uint64_t poisoned;
    std::size_t select_action(RngStream& rng) const {
      if (rng.seed() == poisoned) throw std::bad_alloc();
      return 0;
    }
    void update(std::size_t, RewardSample) {}
  };
  try {
    run_and_aggregate_with(spec, [&](std::size_t) { return Failing{poisoned}; }, 4);
    FAIL() << "expected RunFailure";
  } catch (const RunFailure& e) {
    EXPECT_EQ(e.run_index(), 5U);
    EXPECT_NE(std::string(e.what()).find("run 5"), std::string::npos);
  }
}

TEST(RunExperiment, ExploringGreedyMatchesExactEnumeration) {
  const std::vector<double> probs{0.2, 0.6};
  const std::size_t n = 100'000;
  auto spec = make_spec(AgentKind::epsilon_greedy, EnvironmentSpec(0, probs, "pair"), 4, n, 12);
  spec.params.epsilon = 0.3;
  const auto exact = testing::exact_expected_cumulative(probs, 4, testing::OraclePolicy::epsilon_greedy, 0.3);
  const auto r = run_and_aggregate(spec);
  const auto trajs = run_experiment(spec);
  for (std::size_t t = 0; t < 4; ++t) {
    double sq = 0;
    for (const auto& tr : trajs) sq += std::pow(tr.cumulative[t] - r.mean_cumulative[t], 2);
    const double sigma = std::sqrt(sq / n / n);
    EXPECT_LE(std::abs(r.mean_cumulative[t] - exact[t]), 3 * sigma) << "t=" << t;
  }
}

TEST(Cohort, SingleCategoryReplaysSingleEnvironment) {
  for (AgentKind agent : kAllAgents) {
    for (int k = 1; k <= 4; ++k) {
      std::vector<double> w(4, 0.0);
      w[static_cast<std::size_t>(k - 1)] = 1.0;
      const auto cohort = make_spec(agent, CohortSpec(w), 200, 4, 1234);
      const auto single = make_spec(agent, make_category_env(k), 200, 4, 1234);
      for (std::uint64_t run = 0; run < 4; ++run) {
        auto a = run_trajectory(cohort, run);
        const auto b = run_trajectory(single, run);
        for (auto c : a.categories) ASSERT_EQ(c, k);
        a.categories.clear();
        EXPECT_EQ(a, b) << to_string(agent) << " cat" << k;
      }
    }
  }
}

TEST(Cohort, FixedPolicyMixtureMeans) {
  const auto spec = make_spec(AgentKind::random, default_cohort(), 2000, 200, 77);
  const auto arm3 = run_and_aggregate_with(spec, [](std::size_t) { return FixedArm{2}; });
  EXPECT_NEAR(arm3.mean_reward_rate, (55 + 20 + 10 + 2.5) / 90.0, 0.005);
  const auto arm1 = run_and_aggregate_with(spec, [](std::size_t) { return FixedArm{0}; });
  EXPECT_NEAR(arm1.mean_reward_rate, (55 + 10.0) / 90.0, 0.005);
}

TEST(Cohort, OptimalMeanIsWeightedBestArm) {
  EXPECT_NEAR(optimal_mean_reward(default_cohort()), (55 + 20 + 10 + 2.5) / 90.0, 1e-15);
  EXPECT_EQ(optimal_mean_reward(make_category_env(4)), 0.5);
}

}  // namespace
}  // namespace edubandit
