#include <gtest/gtest.h>

#include "imagine/reward.hpp"
#include "support/fixtures.hpp"
#include "support/plan_fuzz.hpp"
#include "support/reward_cases.hpp"

using namespace imagine;

TEST(Reward, HandScoredCases) {
  const auto sb = fixtures::world();
  const auto cases = reward_cases::all();
  ASSERT_GE(cases.size(), 30u);
  for (const auto& c : cases) {
    const auto r = compute_reward(sb, c.query, c.response);
    EXPECT_EQ(r.total, c.expected) << c.name;
    EXPECT_EQ(r.format_ok, c.format_ok) << c.name;
    EXPECT_EQ(r.failure.empty(), c.format_ok) << c.name;
  }
}

TEST(Reward, BreakdownSumsToTotal) {
  const auto sb = fixtures::world();
  for (const auto& c : reward_cases::all()) {
    const auto r = compute_reward(sb, c.query, c.response);
    if (!r.format_ok) continue;
    EXPECT_EQ(r.total, r.commonsense_reward + r.hard_reward + r.reflection_reward) << c.name;
    EXPECT_EQ(std::abs(r.reflection_reward), 0.5);
  }
}

TEST(Reward, VerbatimConstants) {
  EXPECT_EQ(kReflectionMarker,
            "REFLECTION(Now, I need to reflect on whether there are any errors in my reasoning above):");
  EXPECT_EQ(kReflectionCloser, "The reflection is over, now IMMEDIATELY output the final answer!");
  EXPECT_EQ(kNoErrors, "No errors.");
  EXPECT_EQ(kFormatFailureReward, -1.0);
  EXPECT_EQ(kReflectionBonus, 0.5);
  EXPECT_EQ(reward_cases::kMarker, kReflectionMarker);
  EXPECT_EQ(reward_cases::kCloser, kReflectionCloser);
}

TEST(Reflection, Detection) {
  const std::string pad(100, 'x');
  EXPECT_FALSE(detect_reflection(""));
  EXPECT_FALSE(detect_reflection(pad));
  EXPECT_TRUE(detect_reflection(pad + "REFLECTION: looks fine"));
  EXPECT_TRUE(detect_reflection(pad + "REFLECTION(check) all good"));
  EXPECT_TRUE(detect_reflection(pad + "REFLECTION all good"));
  EXPECT_FALSE(detect_reflection(pad + "REFLECTION:"));
  EXPECT_FALSE(detect_reflection(pad + "REFLECTION(check):  \n"));
  EXPECT_FALSE(detect_reflection(pad + "REFLECTION(check)"));
  EXPECT_FALSE(detect_reflection("REFLECTION: early" + pad + pad));
  EXPECT_TRUE(detect_reflection("REFLECTION: early" + pad + pad + std::string(kReflectionCloser)));
  // only the last marker counts
  EXPECT_FALSE(detect_reflection("REFLECTION: a" + pad + pad + "REFLECTION:"));
}

TEST(Reflection, TrailingRegionBoundary) {
  // marker at exactly 60% of the text
  const std::string body = "REFLECTION: ok";
  const std::string think = std::string(21, '.') + body;  // 21 / 35 = 0.6
  ASSERT_EQ(think.size(), 35u);
  EXPECT_TRUE(detect_reflection(think));
  const std::string earlier = think.substr(1);  // 20 / 34 < 0.6
  EXPECT_FALSE(detect_reflection(earlier));
  EXPECT_TRUE(detect_reflection(earlier, ReflectionRule{0.5}));
}

TEST(Reward, RangeLawOverFuzz) {
  const auto sb = generate_sandbox(42, SandboxProfile::Tiny);
  fuzz::PairGenerator gen(sb, generate_queries(sb, 60, 3, {}), 17);
  Rng rng(4);
  const std::string prefix = "<think>fuzz</think>";
  int ok = 0;
  for (int i = 0; i < 10000; ++i) {
    auto c = gen.next();
    if (c.response.starts_with(prefix) && rng.bernoulli(0.5))
      c.response = "<think>" + reward_cases::reflective() + "</think>" + c.response.substr(prefix.size());
    const auto r = compute_reward(sb, c.query, c.response);
    const auto env = parse_envelope(c.response);
    const bool parsed = env && env->plan;
    ASSERT_EQ(r.format_ok, parsed) << c.response;
    if (!parsed) {
      ASSERT_EQ(r.total, -1.0);
      continue;
    }
    ++ok;
    ASSERT_GE(r.total, -0.5);
    ASSERT_LE(r.total, 2.5);
    ASSERT_GE(r.commonsense_reward, 0.0);
    ASSERT_LE(r.commonsense_reward, 1.0);
    ASSERT_GE(r.hard_reward, 0.0);
    ASSERT_LE(r.hard_reward, 1.0);
  }
  EXPECT_GT(ok, 8000);
}

TEST(Reward, JsonShape) {
  const auto r = compute_reward(fixtures::world(), fixtures::brill_trip(), "nope");
  const auto j = to_json(r);
  EXPECT_EQ(j["total"].get<double>(), -1.0);
  EXPECT_FALSE(j["format_ok"].get<bool>());
}
