#include "phishpond/bot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace phishpond {

namespace {

double parse_probability(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? text.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

BotPolicy BotPolicy::parse(std::string_view spec, std::uint64_t seed) {
  const auto parts = split(spec, ':');
  BotPolicy policy;
  policy.seed = seed;
  if (parts[0] == "oracle" && parts.size() == 1) {
    policy.kind = BotKind::kOracle;
  } else if (parts[0] == "random" && parts.size() == 2) {
    policy.kind = BotKind::kRandom;
    policy.p_correct = parse_probability(parts[1]);
  } else if (parts[0] == "learner" && parts.size() == 3) {
    policy.kind = BotKind::kLearner;
    policy.start_p = parse_probability(parts[1]);
    policy.end_p = parse_probability(parts[2]);
  } else {
    throw std::invalid_argument("policy must be oracle, random:P or learner:START:END, got '" + std::string(spec) +
                                "'");
  }
  policy.validate();
  return policy;
}

std::string BotPolicy::describe() const {
  std::ostringstream out;
  switch (kind) {
    case BotKind::kOracle:
      out << "oracle";
      break;
    case BotKind::kRandom:
      out << "random:" << p_correct;
      break;
    case BotKind::kLearner:
      out << "learner:" << start_p << ":" << end_p;
      break;
  }
  return out.str();
}

void BotPolicy::validate() const {
  if (!in_unit_interval(p_correct) || !in_unit_interval(start_p) || !in_unit_interval(end_p) ||
      !in_unit_interval(help_probability)) {
    throw std::invalid_argument("bot probabilities must be in [0,1]");
  }
  if (!(think_seconds >= 0.0) || !std::isfinite(think_seconds)) {
    throw std::invalid_argument("think_seconds must be a finite non-negative number");
  }
}

Bot::Bot(BotPolicy policy) : policy_(policy), rng_(policy.seed) { policy_.validate(); }

double Bot::accuracy_for(std::size_t worm_ordinal, std::size_t total_worms) const {
  switch (policy_.kind) {
    case BotKind::kOracle:
      return 1.0;
    case BotKind::kRandom:
      return policy_.p_correct;
    case BotKind::kLearner: {
      if (total_worms <= 1) return policy_.start_p;
      const double t = static_cast<double>(std::min(worm_ordinal, total_worms - 1)) /
                       static_cast<double>(total_worms - 1);
      return policy_.start_p + (policy_.end_p - policy_.start_p) * t;
    }
  }
  return 1.0;
}

PlayerAction Bot::next_action(const GameState& state) {
  const std::size_t per_level = state.config.worms_per_level;
  const std::size_t ordinal = static_cast<std::size_t>(state.level) * per_level + state.queue_position - 1;
  const std::size_t spawn_key = ordinal + 1;
  if (spawn_key != spawn_count_) {
    spawn_count_ = spawn_key;
    worms_seen_ = ordinal;
    asked_ = false;
    ticked_ = false;
  }

  const PackItem& item = *state.current_item();
  const double p = accuracy_for(worms_seen_, per_level * kLevelCount);
  const bool oracle = policy_.kind == BotKind::kOracle;

  if (state.phase == Phase::kAwaitClassify) {
    if (!asked_) {
      asked_ = true;
      if (policy_.help_probability > 0.0 && rng_.chance(policy_.help_probability)) {
        return PlayerAction::ask_big_fish();
      }
    }
    if (!ticked_) {
      ticked_ = true;
      if (policy_.think_seconds > 0.0) return PlayerAction::tick(policy_.think_seconds);
    }
    const bool correct = oracle || rng_.chance(p);
    const bool phishing = item.label == Label::kPhishing;
    return phishing == correct ? PlayerAction::reject() : PlayerAction::eat();
  }

  // AwaitLocate
  const bool correct = oracle || rng_.chance(p);
  if (correct) return PlayerAction::locate(item.phish_components.front());
  std::vector<ComponentId> decoys;
  for (const auto& c : state.current_prepared()->url.components()) {
    if (std::find(item.phish_components.begin(), item.phish_components.end(), c.id) == item.phish_components.end()) {
      decoys.push_back(c.id);
    }
  }
  if (decoys.empty()) return PlayerAction::locate(item.phish_components.front());
  return PlayerAction::locate(rng_.pick(decoys));
}

SimulationResult simulate(const GameConfig& config, std::shared_ptr<const PreparedPack> content, std::uint64_t seed,
                          const BotPolicy& policy, const SelfEfficacyModel& model) {
  Bot bot(policy);
  SessionRecorder recorder(config, content->pack, seed);
  GameState state = new_session(config, std::move(content), seed);
  KnowledgeStats stats;

  // Each worm takes at most four actions (ask, tick, classify, locate).
  const std::size_t step_limit = 8 * config.worms_per_level * kLevelCount + 16;
  for (std::size_t steps = 0; !is_terminal(state); ++steps) {
    if (steps > step_limit) throw std::logic_error("bot session did not terminate");
    const PlayerAction action = bot.next_action(state);
    StepResult step = apply_action(state, action);
    stats = update_stats(stats, step);
    recorder.record(action, step);
    state = std::move(step.new_state);
  }

  SimulationResult result;
  result.stats = stats;
  result.summary = assess(stats, model);
  recorder.set_summary(result.summary);
  result.log = std::move(recorder).take();
  result.final_state = std::move(state);
  return result;
}

}  // namespace phishpond
