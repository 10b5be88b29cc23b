#include "phishpond/bot.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "test_support.hpp"

namespace phishpond {
namespace {

using testing::small_pack;

std::string log_text_without_timestamp(SessionLog log) {
  log.header.started_at.clear();
  std::ostringstream out;
  write_log(log, out);
  return out.str();
}

TEST(BotPolicy, Parse) {
  EXPECT_EQ(BotPolicy::parse("oracle").kind, BotKind::kOracle);
  const BotPolicy random = BotPolicy::parse("random:0.25", 4);
  EXPECT_EQ(random.kind, BotKind::kRandom);
  EXPECT_EQ(random.p_correct, 0.25);
  EXPECT_EQ(random.seed, 4u);
  const BotPolicy learner = BotPolicy::parse("learner:0.2:0.9");
  EXPECT_EQ(learner.kind, BotKind::kLearner);
  EXPECT_EQ(learner.start_p, 0.2);
  EXPECT_EQ(learner.end_p, 0.9);
  EXPECT_EQ(learner.describe(), "learner:0.2:0.9");
  for (const char* bad : {"", "oracle:1", "random", "random:1.5", "random:x", "learner:0.1", "genius"}) {
    EXPECT_THROW(BotPolicy::parse(bad), std::invalid_argument) << bad;
  }
}

TEST(Bot, LearnerInterpolatesLinearly) {
  const Bot bot(BotPolicy::parse("learner:0.2:1"));
  EXPECT_DOUBLE_EQ(bot.accuracy_for(0, 5), 0.2);
  EXPECT_DOUBLE_EQ(bot.accuracy_for(2, 5), 0.6);
  EXPECT_DOUBLE_EQ(bot.accuracy_for(4, 5), 1.0);
}

TEST(Simulate, OracleIsPerfect) {
  const auto content = prepare_pack(small_pack());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SimulationResult r = simulate(GameConfig{}, content, seed, BotPolicy::parse("oracle", seed));
    EXPECT_EQ(r.stats.classify_correct, r.stats.classify_total);
    EXPECT_EQ(r.stats.locate_correct, r.stats.locate_total);
    EXPECT_EQ(r.stats.classify_total, 36u);
    EXPECT_EQ(r.stats.locate_total, 18u);
    EXPECT_EQ(r.final_state.phase, Phase::kLevelComplete);
    EXPECT_EQ(r.summary, assess(r.stats));
    EXPECT_EQ(r.log.summary, r.summary);
  }
}

TEST(Simulate, RandomPolicyIsDeterministic) {
  const auto content = prepare_pack(small_pack());
  const BotPolicy policy = BotPolicy::parse("random:0.5", 9);
  const SimulationResult a = simulate(GameConfig{}, content, 9, policy);
  const SimulationResult b = simulate(GameConfig{}, content, 9, policy);
  EXPECT_EQ(log_text_without_timestamp(a.log), log_text_without_timestamp(b.log));
  EXPECT_EQ(a.summary, b.summary);
}

TEST(Simulate, OracleOutscoresCoinFlipper) {
  const auto content = prepare_pack(small_pack());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double oracle = simulate(GameConfig{}, content, seed, BotPolicy::parse("oracle", seed)).summary.self_efficacy;
    const double coin = simulate(GameConfig{}, content, seed, BotPolicy::parse("random:0.5", seed)).summary.self_efficacy;
    EXPECT_GT(oracle, coin) << seed;
  }
}

TEST(Simulate, HelpSeekingBotRunsOutOfTime) {
  BotPolicy policy = BotPolicy::parse("oracle");
  policy.help_probability = 1.0;
  const SimulationResult r = simulate(GameConfig{}, prepare_pack(small_pack()), 1, policy);
  EXPECT_EQ(r.final_state.phase, Phase::kGameOver);
  EXPECT_GT(r.stats.help_requests, 0u);
  EXPECT_EQ(r.log.records.back().events.back().kind, EventKind::kTimeOut);
}

}  // namespace
}  // namespace phishpond
