#include "phishpond/game_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace phishpond {

namespace {

constexpr std::array<std::string_view, kLevelCount> kLevelNames = {"Beginner", "Intermediate", "Advanced"};
constexpr std::array<std::string_view, 5> kPhaseNames = {"AwaitClassify", "AwaitLocate", "BetweenWorms",
                                                         "LevelComplete", "GameOver"};
constexpr std::array<std::string_view, 5> kActionNames = {"eat", "reject", "locate", "ask_big_fish", "tick"};
constexpr std::array<std::string_view, 11> kEventNames = {
    "WormSpawned",  "ClassifiedCorrect", "ClassifiedWrong", "LocatePrompt", "LocateCorrect", "LocateWrong",
    "HintGiven",    "TimePenalty",       "Feedback",        "LevelUp",      "TimeOut",
};

constexpr std::string_view kGenericHint =
    "look at the name right before the ending of the address; numbers, hyphens and look-alike spellings there "
    "are warning signs";

// Largest-remainder apportionment of total over weights; ties go to the
// lower index.
template <std::size_t N>
std::array<std::size_t, N> apportion(std::size_t total, const std::array<double, N>& weights) {
  std::array<std::size_t, N> counts{};
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (sum <= 0.0 || total == 0) return counts;
  std::array<double, N> remainders{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const double quota = static_cast<double>(total) * weights[i] / sum;
    counts[i] = static_cast<std::size_t>(std::floor(quota));
    remainders[i] = quota - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::array<std::size_t, N> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++counts[order[k % N]];
  return counts;
}

std::string quoted(std::string_view text) { return "\"" + std::string(text) + "\""; }

void emit(GameState& state, std::vector<Event>& events, Event event) {
  events.push_back(event);
  state.stats_events.push_back(std::move(event));
}

void spawn(GameState& state, std::vector<Event>& events) {
  const auto& queue = state.level_queues[static_cast<std::size_t>(state.level)];
  const std::size_t index = queue[state.queue_position++];
  state.current_worm = index;
  state.phase = Phase::kAwaitClassify;
  emit(state, events, Event{EventKind::kWormSpawned, state.content->pack.items[index].url, 0.0});
}

// Resolves the current worm and brings in the next one, levelling up when the
// queue runs dry.
void advance(GameState& state, std::vector<Event>& events) {
  state.current_worm.reset();
  state.phase = Phase::kBetweenWorms;
  if (state.queue_position < state.level_queues[static_cast<std::size_t>(state.level)].size()) {
    spawn(state, events);
    return;
  }
  if (state.level == Level::kAdvanced) {
    state.phase = Phase::kLevelComplete;
    return;
  }
  state.level = static_cast<Level>(static_cast<int>(state.level) + 1);
  state.remaining_time = state.config.level_time[static_cast<std::size_t>(state.level)];
  state.queue_position = 0;
  emit(state, events, Event{EventKind::kLevelUp, {}, 0.0});
  spawn(state, events);
}

void lose_time(GameState& state, std::vector<Event>& events, double seconds) {
  state.remaining_time = std::max(0.0, state.remaining_time - seconds);
  if (state.remaining_time <= 0.0) {
    state.remaining_time = 0.0;
    state.current_worm.reset();
    state.phase = Phase::kGameOver;
    emit(state, events, Event{EventKind::kTimeOut, {}, 0.0});
  }
}

bool legal_in(ActionKind kind, Phase phase) {
  switch (kind) {
    case ActionKind::kEat:
    case ActionKind::kReject:
    case ActionKind::kAskBigFish:
      return phase == Phase::kAwaitClassify;
    case ActionKind::kLocate:
      return phase == Phase::kAwaitLocate;
    case ActionKind::kTick:
      return phase == Phase::kAwaitClassify || phase == Phase::kAwaitLocate;
  }
  return false;
}

PreparedItem prepare_item(const ContentPack& pack, const PackItem& item, const RuleSet& rules) {
  PreparedItem prepared{parse_url(item.url), {}, {}, {}, {}};
  const auto brands = analysis_brands(pack, item);
  prepared.analysis = analyze(prepared.url, rules, brands);

  if (item.label == Label::kPhishing) {
    AnalysisReport& key = prepared.answer_key;
    key.verdict = Verdict::kPhishing;
    for (const auto& f : prepared.analysis.findings) {
      if (std::find(item.phish_components.begin(), item.phish_components.end(), f.component) !=
          item.phish_components.end()) {
        key.findings.push_back(f);
      }
    }
    // Components the pack author marked that no rule explains.
    for (const auto& id : item.phish_components) {
      const bool covered = std::any_of(key.findings.begin(), key.findings.end(),
                                       [&](const Finding& f) { return f.component == id; });
      if (covered) continue;
      const Component* c = prepared.url.find(id);
      key.findings.push_back(Finding{"pack", 1, id, c->span,
                                     quoted(c->text) + " is the part of this address that gives the phishing away."});
    }
    key.primary_finding = key.findings.front();
    prepared.explanation = key.primary_finding->explanation;
  } else {
    const auto& domain = prepared.url.registered_domain();
    const std::string owner =
        domain ? *domain : std::string(prepared.url.host_span().slice(prepared.url.raw()));
    prepared.explanation =
        quoted(owner) + " is the site's own domain and nothing in the address hides where it really leads.";
  }

  if (!item.hint.empty()) {
    prepared.hint = item.hint;
  } else if (prepared.analysis.primary_finding) {
    const Rule* rule = rules.find(prepared.analysis.primary_finding->rule_id);
    prepared.hint = rule ? rule->hint : std::string(kGenericHint);
  } else {
    prepared.hint = std::string(kGenericHint);
  }
  return prepared;
}

}  // namespace

std::string_view to_string(Level level) { return kLevelNames[static_cast<std::size_t>(level)]; }
std::string_view to_string(Phase phase) { return kPhaseNames[static_cast<std::size_t>(phase)]; }
std::string_view to_string(ActionKind kind) { return kActionNames[static_cast<std::size_t>(kind)]; }
std::string_view to_string(EventKind kind) { return kEventNames[static_cast<std::size_t>(kind)]; }

std::optional<Level> level_from_string(std::string_view text) {
  for (std::size_t i = 0; i < kLevelNames.size(); ++i) {
    if (kLevelNames[i] == text) return static_cast<Level>(i);
  }
  return std::nullopt;
}

std::optional<Phase> phase_from_string(std::string_view text) {
  for (std::size_t i = 0; i < kPhaseNames.size(); ++i) {
    if (kPhaseNames[i] == text) return static_cast<Phase>(i);
  }
  return std::nullopt;
}

std::optional<EventKind> event_kind_from_string(std::string_view text) {
  for (std::size_t i = 0; i < kEventNames.size(); ++i) {
    if (kEventNames[i] == text) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

void GameConfig::validate() const {
  if (score_classify_correct < 0 || score_locate_correct < 0) throw InvalidConfig("score increments must be >= 0");
  if (!(help_penalty > 0.0) || !std::isfinite(help_penalty)) throw InvalidConfig("help_penalty must be > 0");
  for (double t : level_time) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidConfig("level times must be positive");
  }
  if (!(level_time[0] > level_time[1] && level_time[1] > level_time[2])) {
    throw InvalidConfig("level times must strictly decrease from Beginner to Advanced");
  }
  if (worms_per_level == 0) throw InvalidConfig("worms_per_level must be > 0");
  if (!(phishing_ratio > 0.0 && phishing_ratio < 1.0)) throw InvalidConfig("phishing_ratio must be in (0,1)");
  for (const auto& mix : level_difficulty_mix) {
    double sum = 0.0;
    for (double w : mix) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidConfig("difficulty weights must be >= 0");
      sum += w;
    }
    if (!(sum > 0.0)) throw InvalidConfig("each level needs a positive difficulty weight");
  }
}

std::shared_ptr<const PreparedPack> prepare_pack(ContentPack pack, const RuleSet& rules) {
  auto prepared = std::make_shared<PreparedPack>();
  prepared->items.reserve(pack.items.size());
  for (const auto& item : pack.items) prepared->items.push_back(prepare_item(pack, item, rules));
  prepared->pack = std::move(pack);
  return prepared;
}

std::vector<std::size_t> GameState::worm_queue() const {
  const auto& queue = level_queues[static_cast<std::size_t>(level)];
  if (queue_position >= queue.size()) return {};
  return {queue.begin() + static_cast<std::ptrdiff_t>(queue_position), queue.end()};
}

const PackItem* GameState::current_item() const {
  return current_worm ? &content->pack.items[*current_worm] : nullptr;
}

const PreparedItem* GameState::current_prepared() const {
  return current_worm ? &content->items[*current_worm] : nullptr;
}

bool operator==(const GameState& a, const GameState& b) {
  const bool same_content =
      a.content == b.content || (a.content && b.content && a.content->pack == b.content->pack);
  return same_content && a.config == b.config && a.level == b.level && a.phase == b.phase &&
         a.current_worm == b.current_worm && a.remaining_time == b.remaining_time && a.score == b.score &&
         a.rng_state == b.rng_state && a.level_queues == b.level_queues && a.queue_position == b.queue_position &&
         a.stats_events == b.stats_events;
}

std::array<std::array<std::size_t, 2>, 3> level_tier_counts(const GameConfig& config, Level level) {
  const auto tiers = apportion(config.worms_per_level, config.level_difficulty_mix[static_cast<std::size_t>(level)]);
  const auto phishing_total = static_cast<std::size_t>(
      std::llround(static_cast<double>(config.worms_per_level) * config.phishing_ratio));
  std::array<double, 3> tier_weights{};
  for (std::size_t t = 0; t < 3; ++t) tier_weights[t] = static_cast<double>(tiers[t]);
  const auto phishing = apportion(phishing_total, tier_weights);
  std::array<std::array<std::size_t, 2>, 3> out{};
  for (std::size_t t = 0; t < 3; ++t) out[t] = {phishing[t], tiers[t] - phishing[t]};
  return out;
}

std::vector<std::size_t> draw_level_queue(const GameConfig& config, const ContentPack& pack, Level level, Rng& rng) {
  const auto counts = level_tier_counts(config, level);
  std::vector<std::size_t> queue;
  for (int difficulty = 1; difficulty <= 3; ++difficulty) {
    for (Label label : {Label::kPhishing, Label::kLegitimate}) {
      const std::size_t needed = counts[static_cast<std::size_t>(difficulty - 1)][label == Label::kPhishing ? 0 : 1];
      if (needed == 0) continue;
      std::vector<std::size_t> bucket;
      for (std::size_t i = 0; i < pack.items.size(); ++i) {
        if (pack.items[i].difficulty == difficulty && pack.items[i].label == label) bucket.push_back(i);
      }
      if (bucket.empty()) {
        throw InsufficientPack(std::string(to_string(level)) + " needs " + std::to_string(needed) + " " +
                               std::string(to_string(label)) + " item(s) at difficulty " +
                               std::to_string(difficulty) + " but the pack has none");
      }
      // Without replacement until the bucket runs out, then a fresh shuffle.
      std::vector<std::size_t> deck;
      for (std::size_t drawn = 0; drawn < needed; ++drawn) {
        if (deck.empty()) {
          deck = bucket;
          rng.shuffle(deck);
        }
        queue.push_back(deck.back());
        deck.pop_back();
      }
    }
  }
  rng.shuffle(queue);
  return queue;
}

GameState new_session(const GameConfig& config, std::shared_ptr<const PreparedPack> content, std::uint64_t seed) {
  config.validate();
  GameState state;
  state.content = std::move(content);
  state.config = config;
  state.rng_state = Rng(seed);
  for (std::size_t l = 0; l < kLevelCount; ++l) {
    state.level_queues[l] = draw_level_queue(config, state.content->pack, static_cast<Level>(l), state.rng_state);
  }
  state.level = Level::kBeginner;
  state.remaining_time = config.level_time[0];
  std::vector<Event> events;
  spawn(state, events);
  return state;
}

GameState new_session(const GameConfig& config, const ContentPack& pack, std::uint64_t seed) {
  return new_session(config, prepare_pack(pack), seed);
}

bool is_terminal(const GameState& state) {
  return state.phase == Phase::kGameOver || state.phase == Phase::kLevelComplete;
}

StepResult apply_action(const GameState& state, const PlayerAction& action) {
  if (is_terminal(state)) throw SessionOver("session is over (" + std::string(to_string(state.phase)) + ")");
  if (!legal_in(action.kind, state.phase)) {
    throw IllegalAction("action '" + std::string(to_string(action.kind)) + "' is not legal in phase " +
                        std::string(to_string(state.phase)));
  }
  if (action.kind == ActionKind::kTick && (!std::isfinite(action.elapsed) || action.elapsed < 0.0)) {
    throw std::invalid_argument("tick elapsed must be a finite non-negative number of seconds");
  }

  StepResult result{state, {}, 0};
  GameState& next = result.new_state;
  std::vector<Event>& events = result.events;
  const PackItem& item = *state.current_item();
  const PreparedItem& prepared = *state.current_prepared();
  const bool phishing = item.label == Label::kPhishing;
  const GameConfig& config = state.config;

  switch (action.kind) {
    case ActionKind::kEat:
      if (!phishing) {
        emit(next, events, Event{EventKind::kClassifiedCorrect, {}, 0.0});
        result.score_delta = config.score_classify_correct;
      } else {
        emit(next, events, Event{EventKind::kClassifiedWrong, {}, 0.0});
        emit(next, events, Event{EventKind::kFeedback, "That worm was fake! " + prepared.explanation, 0.0});
      }
      next.score += result.score_delta;
      advance(next, events);
      break;

    case ActionKind::kReject:
      if (phishing) {
        // Classification points are banked together with the locate outcome.
        emit(next, events, Event{EventKind::kClassifiedCorrect, {}, 0.0});
        emit(next, events, Event{EventKind::kLocatePrompt, {}, 0.0});
        next.phase = Phase::kAwaitLocate;
      } else {
        emit(next, events, Event{EventKind::kClassifiedWrong, {}, 0.0});
        emit(next, events, Event{EventKind::kFeedback, "That worm was real. " + prepared.explanation, 0.0});
        advance(next, events);
      }
      break;

    case ActionKind::kLocate:
      if (grade_component_pick(prepared.answer_key, action.component) == PickGrade::kCorrect) {
        emit(next, events, Event{EventKind::kLocateCorrect, {}, 0.0});
        result.score_delta = config.score_classify_correct + config.score_locate_correct;
      } else {
        const Finding& truth = *prepared.answer_key.primary_finding;
        const std::string text(truth.span.slice(prepared.url.raw()));
        emit(next, events, Event{EventKind::kLocateWrong, {}, 0.0});
        emit(next, events,
             Event{EventKind::kFeedback, "The phishing part was " + quoted(text) + ". " + truth.explanation, 0.0});
        result.score_delta = config.score_classify_correct;
      }
      next.score += result.score_delta;
      advance(next, events);
      break;

    case ActionKind::kAskBigFish:
      emit(next, events, Event{EventKind::kHintGiven, prepared.hint, 0.0});
      emit(next, events, Event{EventKind::kTimePenalty, {}, config.help_penalty});
      lose_time(next, events, config.help_penalty);
      break;

    case ActionKind::kTick:
      lose_time(next, events, action.elapsed);
      break;
  }
  return result;
}

}  // namespace phishpond
