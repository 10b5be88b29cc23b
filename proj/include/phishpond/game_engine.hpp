#pragma once

// Deterministic session state machine for the pond game.
//
// A worm carries one URL. The player eats it (claims it is legitimate) or
// rejects it (claims phishing). A correct rejection opens a second phase in
// which the player must point at the URL component that gives the phishing
// away. Asking the big fish for a hint costs time. Time only advances through
// Tick actions, so a session is a pure function of (config, pack, seed,
// actions).

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "phishpond/content_pack.hpp"
#include "phishpond/phish_rules.hpp"
#include "phishpond/rng.hpp"
#include "phishpond/url_model.hpp"

namespace phishpond {

enum class Level { kBeginner = 0, kIntermediate = 1, kAdvanced = 2 };
inline constexpr std::size_t kLevelCount = 3;

enum class Phase { kAwaitClassify, kAwaitLocate, kBetweenWorms, kLevelComplete, kGameOver };

std::string_view to_string(Level level);
std::string_view to_string(Phase phase);
std::optional<Level> level_from_string(std::string_view text);
std::optional<Phase> phase_from_string(std::string_view text);

// Weights over difficulty tiers 1..3.
using DifficultyMix = std::array<double, 3>;

struct GameConfig {
  std::int64_t score_classify_correct = 10;
  std::int64_t score_locate_correct = 5;
  double help_penalty = 100.0;  // seconds
  std::array<double, kLevelCount> level_time = {300.0, 240.0, 180.0};
  std::size_t worms_per_level = 12;
  double phishing_ratio = 0.5;
  std::array<DifficultyMix, kLevelCount> level_difficulty_mix = {{
      {0.75, 0.25, 0.0},
      {0.25, 0.50, 0.25},
      {0.0, 0.25, 0.75},
  }};

  // Throws InvalidConfig.
  void validate() const;

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public GameError {
 public:
  using GameError::GameError;
};

class InsufficientPack : public GameError {
 public:
  using GameError::GameError;
};

class IllegalAction : public GameError {
 public:
  using GameError::GameError;
};

class SessionOver : public GameError {
 public:
  using GameError::GameError;
};

enum class ActionKind { kEat, kReject, kLocate, kAskBigFish, kTick };

std::string_view to_string(ActionKind kind);

struct PlayerAction {
  ActionKind kind = ActionKind::kEat;
  ComponentId component;  // Locate only
  double elapsed = 0.0;   // Tick only, seconds

  static PlayerAction eat() { return {ActionKind::kEat, {}, 0.0}; }
  static PlayerAction reject() { return {ActionKind::kReject, {}, 0.0}; }
  static PlayerAction locate(ComponentId pick) { return {ActionKind::kLocate, pick, 0.0}; }
  static PlayerAction ask_big_fish() { return {ActionKind::kAskBigFish, {}, 0.0}; }
  static PlayerAction tick(double seconds) { return {ActionKind::kTick, {}, seconds}; }

  friend bool operator==(const PlayerAction&, const PlayerAction&) = default;
};

enum class EventKind {
  kWormSpawned,
  kClassifiedCorrect,
  kClassifiedWrong,
  kLocatePrompt,
  kLocateCorrect,
  kLocateWrong,
  kHintGiven,
  kTimePenalty,
  kFeedback,
  kLevelUp,
  kTimeOut,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view text);

struct Event {
  EventKind kind = EventKind::kWormSpawned;
  std::string text;      // WormSpawned: URL; HintGiven/Feedback: message
  double seconds = 0.0;  // TimePenalty

  friend bool operator==(const Event&, const Event&) = default;
};

// Per-item data derived once per pack: parsed URL, rule analysis and the
// answer key built from the pack's own phish_components.
struct PreparedItem {
  ParsedUrl url;
  AnalysisReport analysis;
  AnalysisReport answer_key;  // verdict Phishing iff the item is labeled phishing
  std::string explanation;    // why the item is phishing, or why it is fine
  std::string hint;
};

struct PreparedPack {
  ContentPack pack;
  std::vector<PreparedItem> items;
};

std::shared_ptr<const PreparedPack> prepare_pack(ContentPack pack, const RuleSet& rules = builtin_ruleset());

struct GameState {
  std::shared_ptr<const PreparedPack> content;
  GameConfig config;

  Level level = Level::kBeginner;
  Phase phase = Phase::kAwaitClassify;
  std::optional<std::size_t> current_worm;  // index into content->pack.items
  double remaining_time = 0.0;
  std::int64_t score = 0;
  Rng rng_state;
  // Queues for all three levels are drawn when the session starts.
  std::array<std::vector<std::size_t>, kLevelCount> level_queues;
  std::size_t queue_position = 0;  // next unspawned worm in the current level
  std::vector<Event> stats_events;

  std::vector<std::size_t> worm_queue() const;
  const PackItem* current_item() const;
  const PreparedItem* current_prepared() const;

  friend bool operator==(const GameState& a, const GameState& b);
};

struct StepResult {
  GameState new_state;
  std::vector<Event> events;
  std::int64_t score_delta = 0;
};

// Number of worms per difficulty tier and how many of those are phishing, for
// one level: counts[tier][0] phishing, counts[tier][1] legitimate.
std::array<std::array<std::size_t, 2>, 3> level_tier_counts(const GameConfig& config, Level level);

// Draws one level's worm queue. Throws InsufficientPack if a required
// (difficulty, label) bucket is empty.
std::vector<std::size_t> draw_level_queue(const GameConfig& config, const ContentPack& pack, Level level,
                                          Rng& rng);

GameState new_session(const GameConfig& config, std::shared_ptr<const PreparedPack> content, std::uint64_t seed);
GameState new_session(const GameConfig& config, const ContentPack& pack, std::uint64_t seed);

// Throws IllegalAction, SessionOver, or std::invalid_argument for a negative
// or non-finite tick.
StepResult apply_action(const GameState& state, const PlayerAction& action);

bool is_terminal(const GameState& state);

}  // namespace phishpond
