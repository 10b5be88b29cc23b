#pragma once

// Scripted players for headless sessions.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "phishpond/assessment.hpp"
#include "phishpond/game_engine.hpp"
#include "phishpond/persistence.hpp"

namespace phishpond {

enum class BotKind { kOracle, kRandom, kLearner };

struct BotPolicy {
  BotKind kind = BotKind::kOracle;
  double p_correct = 1.0;  // Random
  double start_p = 0.5;    // Learner, first worm
  double end_p = 1.0;      // Learner, last worm
  std::uint64_t seed = 0;
  double think_seconds = 5.0;     // ticked before each classification
  double help_probability = 0.0;  // chance to ask the big fish per worm

  // "oracle", "random:P", "learner:START:END". Throws std::invalid_argument.
  static BotPolicy parse(std::string_view spec, std::uint64_t seed = 0);
  std::string describe() const;
  void validate() const;
};

class Bot {
 public:
  explicit Bot(BotPolicy policy);

  // Next action for a non-terminal state.
  PlayerAction next_action(const GameState& state);

  // Probability of answering correctly for the given 0-based worm ordinal.
  double accuracy_for(std::size_t worm_ordinal, std::size_t total_worms) const;

 private:
  BotPolicy policy_;
  Rng rng_;
  std::size_t worms_seen_ = 0;
  std::size_t spawn_count_ = 0;
  bool asked_ = false;
  bool ticked_ = false;
};

struct SimulationResult {
  SessionLog log;
  AssessmentReport summary;
  KnowledgeStats stats;
  GameState final_state;
};

SimulationResult simulate(const GameConfig& config, std::shared_ptr<const PreparedPack> content, std::uint64_t seed,
                          const BotPolicy& policy, const SelfEfficacyModel& model = {});

}  // namespace phishpond
