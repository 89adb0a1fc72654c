#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "imagine/train.hpp"
#include "support/gradcheck.hpp"

using namespace imagine;

using namespace gradcheck;

TEST(Sft, GradientMatchesFiniteDifferences) {
  Rng rng(10);
  for (int point = 0; point < 5; ++point) {
    ToyPolicy policy(3, 4, 5);
    randomize(policy, rng);
    std::vector<SftItem> batch;
    for (int i = 0; i < 6; ++i) {
      SftItem it;
      it.context = static_cast<int>(rng.uniform_int(0, 2));
      const int len = static_cast<int>(rng.uniform_int(1, 4));
      for (int t = 0; t < len; ++t) it.completion.push_back(static_cast<int>(rng.uniform_int(0, 4)));
      batch.push_back(it);
    }
    const auto analytic = sft_loss(policy, batch);
    const auto numeric = numeric_gradient(policy, [&] { return sft_loss(policy, batch).value; });
    EXPECT_LE(relative_error(analytic.gradient, numeric), 1e-5) << "point " << point;
    EXPECT_GT(analytic.value, 0);
  }
}

TEST(Sft, DescentLowersLoss) {
  ToyPolicy policy(1, 2, 3);
  const std::vector<SftItem> batch = {{0, {2, 1}}, {0, {2, 0}}};
  double last = sft_loss(policy, batch).value;
  EXPECT_NEAR(last, 2 * std::log(3.0), 1e-12);
  for (int i = 0; i < 20; ++i) {
    const auto obj = sft_loss(policy, batch);
    auto p = policy.parameters();
    for (std::size_t k = 0; k < p.size(); ++k) p[k] -= 0.5 * obj.gradient[k];
    const double now = sft_loss(policy, batch).value;
    EXPECT_LT(now, last);
    last = now;
  }
}

TEST(Grpo, GradientMatchesFiniteDifferences) {
  Rng rng(20);
  GrpoConfig cfg;
  int points = 0;
  for (int attempt = 0; points < 5 && attempt < 100; ++attempt) {
    ToyPolicy policy(2, 3, 4);
    randomize(policy, rng);
    const auto groups = random_groups(policy, rng, 0.6);
    if (nearest_kink(policy, groups, cfg.clip_epsilon) < 1e-3) continue;
    ++points;
    for (bool pooled : {false, true}) {
      cfg.pooled_tokens = pooled;
      const auto analytic = grpo_objective(policy, groups, cfg);
      const auto numeric = numeric_gradient(policy, [&] { return grpo_objective(policy, groups, cfg).value; });
      EXPECT_LE(relative_error(analytic.gradient, numeric), 1e-5) << "point " << points << " pooled " << pooled;
    }
  }
  EXPECT_EQ(points, 5);
}

TEST(Grpo, ClippedTokensCarryNoGradient) {
  ToyPolicy policy(1, 1, 3);
  GroupSample g;
  g.context = 0;
  g.responses = {{0}, {1}};
  g.advantages = {1.0, -1.0};
  g.rewards = {1, 0};
  // old probabilities far below current for token 0 (w > 1 + eps, A > 0),
  // far above for token 1 (w < 1 - eps, A < 0): both clipped
  const double lp0 = policy.log_prob(0, 0, 0), lp1 = policy.log_prob(0, 0, 1);
  g.old_log_probs = {{lp0 - 1.0}, {lp1 + 1.0}};
  GrpoConfig cfg;
  const auto obj = grpo_objective(policy, std::span<const GroupSample>(&g, 1), cfg);
  for (double x : obj.gradient) EXPECT_EQ(x, 0.0);
  EXPECT_NEAR(obj.value, 0.5 * (1.2 * 1.0) + 0.5 * (0.8 * -1.0), 1e-12);

  // same ratios with advantages flipped: unclipped branch is the minimum
  g.advantages = {-1.0, 1.0};
  const auto open = grpo_objective(policy, std::span<const GroupSample>(&g, 1), cfg);
  double norm = 0;
  for (double x : open.gradient) norm += std::abs(x);
  EXPECT_GT(norm, 0.0);
}

TEST(Grpo, OnPolicyValueIsMeanAdvantage) {
  // with w == 1 everywhere the surrogate reduces to the advantage average
  ToyPolicy policy(1, 3, 4);
  Rng rng(3);
  randomize(policy, rng);
  GroupSample g;
  g.responses = {{1}, {2, 3}, {0, 0, 1}};
  g.rewards = {0.0, 1.0, 2.0};
  g.advantages = compute_advantages(g.rewards);
  record_old_log_probs(policy, g);
  GrpoConfig cfg;
  const auto per_seq = grpo_objective(policy, std::span<const GroupSample>(&g, 1), cfg);
  EXPECT_NEAR(per_seq.value, (g.advantages[0] + g.advantages[1] + g.advantages[2]) / 3, 1e-12);
  cfg.pooled_tokens = true;
  const auto pooled = grpo_objective(policy, std::span<const GroupSample>(&g, 1), cfg);
  EXPECT_NEAR(pooled.value, (1 * g.advantages[0] + 2 * g.advantages[1] + 3 * g.advantages[2]) / 6, 1e-12);
}

TEST(Grpo, MismatchedGroupThrows) {
  ToyPolicy policy(1, 2, 2);
  GroupSample g;
  g.responses = {{0}, {1}};
  g.advantages = {1.0};
  EXPECT_THROW(grpo_objective(policy, std::span<const GroupSample>(&g, 1), GrpoConfig{}), InvariantError);
}

TEST(Advantages, StandardizedWithPopulationStd) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> r(static_cast<std::size_t>(rng.uniform_int(2, 16)));
    for (auto& x : r) x = rng.uniform_real(-1, 2.5);
    const auto a = compute_advantages(r);
    double mean = 0, var = 0;
    for (double x : a) mean += x;
    mean /= a.size();
    for (double x : a) var += (x - mean) * (x - mean);
    EXPECT_NEAR(mean, 0.0, 1e-9);
    EXPECT_NEAR(std::sqrt(var / a.size()), 1.0, 1e-9);
  }
  const auto two = compute_advantages(std::vector<double>{0.0, 2.0});
  EXPECT_DOUBLE_EQ(two[0], -1.0);
  EXPECT_DOUBLE_EQ(two[1], 1.0);
}

TEST(Advantages, DegenerateAndTooSmall) {
  for (double a : compute_advantages(std::vector<double>{1.5, 1.5, 1.5})) EXPECT_EQ(a, 0.0);
  for (double a : compute_advantages(std::vector<double>{1.0, 1.0 + 1e-9})) EXPECT_EQ(a, 0.0);
  EXPECT_THROW(compute_advantages(std::vector<double>{1.0}), ConfigError);
  EXPECT_THROW(compute_advantages(std::vector<double>{}), ConfigError);
}

TEST(Policy, RejectsUnknownTokens) {
  ToyPolicy policy(2, 3, 4);
  const std::vector<SftItem> bad_token = {{0, {1, 4}}};
  EXPECT_THROW(sft_loss(policy, bad_token), UnknownTokenError);
  const std::vector<SftItem> bad_context = {{2, {1}}};
  EXPECT_THROW(sft_loss(policy, bad_context), UnknownTokenError);
  const std::vector<SftItem> too_long = {{0, {1, 1, 1, 1}}};
  EXPECT_THROW(sft_loss(policy, too_long), UnknownTokenError);
  EXPECT_THROW(ToyPolicy(1, 1, 1), ConfigError);
}

TEST(Policy, ProbabilitiesNormalize) {
  ToyPolicy policy(1, 2, 5);
  Rng rng(1);
  randomize(policy, rng, 30.0);
  for (int t = 0; t < 2; ++t) {
    double s = 0;
    for (double p : policy.probabilities(0, t)) s += p;
    EXPECT_NEAR(s, 1.0, 1e-12);
    for (int v = 0; v < 5; ++v) EXPECT_NEAR(std::exp(policy.log_prob(0, t, v)), policy.probabilities(0, t)[v], 1e-12);
  }
}

TEST(ToyEnvironment, RewardTable) {
  ToyPlanEnvironment env;
  EXPECT_EQ(env.reward(std::vector<int>{3, 0, 0}), -1.0);
  EXPECT_EQ(env.reward(std::vector<int>{1, 1}), -1.0);
  // taxi, cheap meals, room type 2: 100 + 60 + 200 = 360 <= 400
  EXPECT_DOUBLE_EQ(env.reward(std::vector<int>{1, 1, 2}), 3.0 / 3 + 2.0 / 2);
  // flight, meals 0, lodging 0: 300 + 150 + 100 = 550 > 400; lodging 0 fails a commonsense item
  EXPECT_DOUBLE_EQ(env.reward(std::vector<int>{0, 0, 0}), 2.0 / 3 + 0.0 / 2);
  // self-driving, closed restaurant, lodging 3: 80 + 40 + 250 = 370
  EXPECT_DOUBLE_EQ(env.reward(std::vector<int>{2, 3, 3}), 1.0 / 3 + 2.0 / 2);
}

TEST(Demo, DeterministicPerSeed) {
  ToyPlanEnvironment env;
  GrpoConfig cfg;
  EXPECT_EQ(grpo_train_demo(env, cfg, 30), grpo_train_demo(env, cfg, 30));
  cfg.seed = 1;
  EXPECT_NE(grpo_train_demo(env, cfg, 30), grpo_train_demo(env, GrpoConfig{}, 30));
}

TEST(Demo, RewardRises) {
  ToyPlanEnvironment env;
  const auto log = grpo_train_demo(env, GrpoConfig{}, 200);
  ASSERT_EQ(log.size(), 200u);
  EXPECT_GE(mean_reward_window(log, 180, 20) - mean_reward_window(log, 0, 20), 0.3);
}

TEST(Demo, ZeroLearningRateDoesNotRise) {
  ToyPlanEnvironment env;
  GrpoConfig cfg;
  cfg.learning_rate = 0;
  const auto log = grpo_train_demo(env, cfg, 200);
  const double diff = mean_reward_window(log, 180, 20) - mean_reward_window(log, 0, 20);
  EXPECT_LT(diff, 0.3);
  // step means are i.i.d. under a frozen policy
  double mean = 0, var = 0;
  for (const auto& r : log) mean += r.mean_reward;
  mean /= log.size();
  for (const auto& r : log) var += (r.mean_reward - mean) * (r.mean_reward - mean);
  var /= log.size() - 1;
  EXPECT_LT(std::abs(diff) / std::sqrt(2 * var / 20), 3.0);
}

TEST(Demo, CsvAndValidation) {
  ToyPlanEnvironment env;
  const auto csv = train_log_csv(grpo_train_demo(env, GrpoConfig{}, 3));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "step,mean_reward,objective,grad_norm");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  GrpoConfig bad;
  bad.group_size = 1;
  EXPECT_THROW(grpo_train_demo(env, bad, 1), ConfigError);
  bad = GrpoConfig{};
  bad.clip_epsilon = 0;
  EXPECT_THROW(grpo_train_demo(env, bad, 1), ConfigError);
}

TEST(Demo, RejectsNonFiniteLearningRate) {
  GrpoConfig cfg;
  cfg.learning_rate = std::numeric_limits<double>::infinity();
  EXPECT_THROW(grpo_train_demo(ToyPlanEnvironment{}, cfg, 1), ConfigError);
  cfg.learning_rate = std::nan("");
  EXPECT_THROW(grpo_train_demo(ToyPlanEnvironment{}, cfg, 1), ConfigError);
}
