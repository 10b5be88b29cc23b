#include "phishpond/json_codec.hpp"

#include <algorithm>
#include <initializer_list>

namespace phishpond {

namespace {

void expect_object(const Json& j, std::string_view what) {
  if (!j.is_object()) throw JsonSchemaError(std::string(what) + " must be an object");
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw JsonSchemaError("unknown field '" + key + "' in " + std::string(what));
    }
  }
}

const Json& require(const Json& j, const char* key, std::string_view what) {
  auto it = j.find(key);
  if (it == j.end()) throw JsonSchemaError(std::string(what) + " missing '" + key + "'");
  return *it;
}

std::string require_string(const Json& j, const char* key, std::string_view what) {
  const Json& v = require(j, key, what);
  if (!v.is_string()) throw JsonSchemaError(std::string(what) + " '" + key + "' must be a string");
  return v.get<std::string>();
}

double require_number(const Json& j, const char* key, std::string_view what) {
  const Json& v = require(j, key, what);
  if (!v.is_number()) throw JsonSchemaError(std::string(what) + " '" + key + "' must be a number");
  return v.get<double>();
}

std::int64_t require_integer(const Json& j, const char* key, std::string_view what) {
  const Json& v = require(j, key, what);
  if (!v.is_number_integer()) throw JsonSchemaError(std::string(what) + " '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::uint64_t require_count(const Json& j, const char* key, std::string_view what) {
  const Json& v = require(j, key, what);
  if (!v.is_number_unsigned()) {
    throw JsonSchemaError(std::string(what) + " '" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

template <typename T>
Json per_level(const std::array<T, kLevelCount>& values) {
  Json out = Json::object();
  for (std::size_t i = 0; i < kLevelCount; ++i) out[std::string(to_string(static_cast<Level>(i)))] = values[i];
  return out;
}

}  // namespace

void to_json(Json& j, const Span& span) { j = Json{{"start", span.start}, {"end", span.end}}; }

void to_json(Json& j, const ComponentId& id) {
  j = Json{{"kind", std::string(to_string(id.kind))}, {"index", id.index}};
}

void from_json(const Json& j, ComponentId& id) {
  expect_object(j, "component");
  reject_unknown(j, {"kind", "index"}, "component");
  const std::string kind = require_string(j, "kind", "component");
  auto parsed = component_kind_from_string(kind);
  if (!parsed) throw JsonSchemaError("unknown component kind '" + kind + "'");
  id.kind = *parsed;
  id.index = require_count(j, "index", "component");
}

void to_json(Json& j, const PackItem& item) {
  j = Json::object();
  j["url"] = item.url;
  j["label"] = std::string(to_string(item.label));
  j["phish_components"] = item.phish_components;
  j["difficulty"] = item.difficulty;
  j["brand"] = item.brand ? Json(*item.brand) : Json(nullptr);
  j["hint"] = item.hint;
}

void from_json(const Json& j, PackItem& item) {
  constexpr std::string_view what = "item";
  expect_object(j, what);
  reject_unknown(j, {"url", "label", "phish_components", "difficulty", "brand", "hint"}, what);
  item.url = require_string(j, "url", what);
  const std::string label = require_string(j, "label", what);
  auto parsed = label_from_string(label);
  if (!parsed) throw JsonSchemaError("label must be \"phishing\" or \"legitimate\", got '" + label + "'");
  item.label = *parsed;
  const Json& components = require(j, "phish_components", what);
  if (!components.is_array()) throw JsonSchemaError("item 'phish_components' must be an array");
  item.phish_components.clear();
  for (const auto& c : components) item.phish_components.push_back(c.get<ComponentId>());
  item.difficulty = static_cast<int>(require_integer(j, "difficulty", what));
  item.brand.reset();
  if (auto it = j.find("brand"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw JsonSchemaError("item 'brand' must be a string or null");
    item.brand = it->get<std::string>();
  }
  item.hint = require_string(j, "hint", what);
}

void to_json(Json& j, const Finding& finding) {
  j = Json::object();
  j["rule_id"] = finding.rule_id;
  j["severity"] = finding.severity;
  j["component"] = finding.component;
  j["span"] = finding.span;
  j["explanation"] = finding.explanation;
}

void to_json(Json& j, const AnalysisReport& report) {
  j = Json::object();
  j["verdict"] = std::string(to_string(report.verdict));
  j["findings"] = report.findings;
  j["primary_finding"] = report.primary_finding ? Json(*report.primary_finding) : Json(nullptr);
}

void to_json(Json& j, const GameConfig& config) {
  j = Json::object();
  j["score_classify_correct"] = config.score_classify_correct;
  j["score_locate_correct"] = config.score_locate_correct;
  j["help_penalty"] = config.help_penalty;
  j["level_time"] = per_level(config.level_time);
  j["worms_per_level"] = config.worms_per_level;
  j["phishing_ratio"] = config.phishing_ratio;
  j["level_difficulty_mix"] = per_level(config.level_difficulty_mix);
}

void from_json(const Json& j, GameConfig& config) {
  constexpr std::string_view what = "config";
  expect_object(j, what);
  reject_unknown(j,
                 {"score_classify_correct", "score_locate_correct", "help_penalty", "level_time", "worms_per_level",
                  "phishing_ratio", "level_difficulty_mix"},
                 what);
  if (j.contains("score_classify_correct")) {
    config.score_classify_correct = require_integer(j, "score_classify_correct", what);
  }
  if (j.contains("score_locate_correct")) {
    config.score_locate_correct = require_integer(j, "score_locate_correct", what);
  }
  if (j.contains("help_penalty")) config.help_penalty = require_number(j, "help_penalty", what);
  if (j.contains("worms_per_level")) config.worms_per_level = require_count(j, "worms_per_level", what);
  if (j.contains("phishing_ratio")) config.phishing_ratio = require_number(j, "phishing_ratio", what);
  if (auto it = j.find("level_time"); it != j.end()) {
    expect_object(*it, "level_time");
    reject_unknown(*it, {"Beginner", "Intermediate", "Advanced"}, "level_time");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_number()) throw JsonSchemaError("level_time values must be numbers");
      config.level_time[static_cast<std::size_t>(*level_from_string(key))] = value.get<double>();
    }
  }
  if (auto it = j.find("level_difficulty_mix"); it != j.end()) {
    expect_object(*it, "level_difficulty_mix");
    reject_unknown(*it, {"Beginner", "Intermediate", "Advanced"}, "level_difficulty_mix");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_array() || value.size() != 3 ||
          !std::all_of(value.begin(), value.end(), [](const Json& w) { return w.is_number(); })) {
        throw JsonSchemaError("level_difficulty_mix values must be arrays of three numbers");
      }
      DifficultyMix mix{};
      for (std::size_t t = 0; t < 3; ++t) mix[t] = value[t].get<double>();
      config.level_difficulty_mix[static_cast<std::size_t>(*level_from_string(key))] = mix;
    }
  }
}

void to_json(Json& j, const PlayerAction& action) {
  j = Json::object();
  j["type"] = std::string(to_string(action.kind));
  if (action.kind == ActionKind::kLocate) j["component"] = action.component;
  if (action.kind == ActionKind::kTick) j["elapsed"] = action.elapsed;
}

void from_json(const Json& j, PlayerAction& action) {
  constexpr std::string_view what = "action";
  expect_object(j, what);
  reject_unknown(j, {"type", "component", "elapsed"}, what);
  const std::string type = require_string(j, "type", what);
  if (type == "eat") {
    action = PlayerAction::eat();
  } else if (type == "reject") {
    action = PlayerAction::reject();
  } else if (type == "ask_big_fish") {
    action = PlayerAction::ask_big_fish();
  } else if (type == "locate") {
    action = PlayerAction::locate(require(j, "component", what).get<ComponentId>());
  } else if (type == "tick") {
    action = PlayerAction::tick(require_number(j, "elapsed", what));
  } else {
    throw JsonSchemaError("unknown action type '" + type + "'");
  }
}

void to_json(Json& j, const Event& event) {
  j = Json::object();
  j["type"] = std::string(to_string(event.kind));
  switch (event.kind) {
    case EventKind::kWormSpawned:
      j["url"] = event.text;
      break;
    case EventKind::kHintGiven:
    case EventKind::kFeedback:
      j["text"] = event.text;
      break;
    case EventKind::kTimePenalty:
      j["seconds"] = event.seconds;
      break;
    default:
      break;
  }
}

void from_json(const Json& j, Event& event) {
  constexpr std::string_view what = "event";
  expect_object(j, what);
  reject_unknown(j, {"type", "url", "text", "seconds"}, what);
  const std::string type = require_string(j, "type", what);
  auto kind = event_kind_from_string(type);
  if (!kind) throw JsonSchemaError("unknown event type '" + type + "'");
  event = Event{*kind, {}, 0.0};
  switch (event.kind) {
    case EventKind::kWormSpawned:
      event.text = require_string(j, "url", what);
      break;
    case EventKind::kHintGiven:
    case EventKind::kFeedback:
      event.text = require_string(j, "text", what);
      break;
    case EventKind::kTimePenalty:
      event.seconds = require_number(j, "seconds", what);
      break;
    default:
      break;
  }
}

void to_json(Json& j, const KnowledgeStats& stats) {
  j = Json::object();
  j["classify_correct"] = stats.classify_correct;
  j["classify_total"] = stats.classify_total;
  j["locate_correct"] = stats.locate_correct;
  j["locate_total"] = stats.locate_total;
  j["help_requests"] = stats.help_requests;
}

void from_json(const Json& j, KnowledgeStats& stats) {
  constexpr std::string_view what = "counts";
  expect_object(j, what);
  reject_unknown(j, {"classify_correct", "classify_total", "locate_correct", "locate_total", "help_requests"}, what);
  stats.classify_correct = require_count(j, "classify_correct", what);
  stats.classify_total = require_count(j, "classify_total", what);
  stats.locate_correct = require_count(j, "locate_correct", what);
  stats.locate_total = require_count(j, "locate_total", what);
  stats.help_requests = require_count(j, "help_requests", what);
}

void to_json(Json& j, const AssessmentReport& report) {
  j = Json::object();
  j["pk"] = report.pk;
  j["ck"] = report.ck;
  j["interaction"] = report.interaction;
  j["self_efficacy"] = report.self_efficacy;
  j["counts"] = report.counts;
  j["unobserved_constructs"] = unobserved_constructs();
}

void from_json(const Json& j, AssessmentReport& report) {
  constexpr std::string_view what = "assessment";
  expect_object(j, what);
  reject_unknown(j, {"pk", "ck", "interaction", "self_efficacy", "counts", "unobserved_constructs"}, what);
  report.pk = require_number(j, "pk", what);
  report.ck = require_number(j, "ck", what);
  report.interaction = require_number(j, "interaction", what);
  report.self_efficacy = require_number(j, "self_efficacy", what);
  report.counts = require(j, "counts", what).get<KnowledgeStats>();
}

void to_json(Json& j, const SelfEfficacyModel& model) {
  j = Json{{"b0", model.b0}, {"b1", model.b1}, {"b2", model.b2}, {"b3", model.b3}};
}

void from_json(const Json& j, SelfEfficacyModel& model) {
  constexpr std::string_view what = "model";
  expect_object(j, what);
  reject_unknown(j, {"b0", "b1", "b2", "b3"}, what);
  if (j.contains("b0")) model.b0 = require_number(j, "b0", what);
  if (j.contains("b1")) model.b1 = require_number(j, "b1", what);
  if (j.contains("b2")) model.b2 = require_number(j, "b2", what);
  if (j.contains("b3")) model.b3 = require_number(j, "b3", what);
}

Json rule_catalog(const RuleSet& rules) {
  Json out = Json::array();
  for (const auto& rule : rules) {
    Json entry = Json::object();
    entry["id"] = rule.id;
    entry["name"] = rule.name;
    entry["severity"] = rule.severity;
    entry["description"] = rule.description;
    entry["hint"] = rule.hint;
    entry["paper_anchored"] = rule.paper_anchored;
    out.push_back(std::move(entry));
  }
  return out;
}

Json segmentation(const ParsedUrl& url) {
  Json out = Json::array();
  for (const auto& c : url.components()) {
    Json entry = Json::object();
    entry["kind"] = std::string(to_string(c.id.kind));
    entry["index"] = c.id.index;
    entry["start"] = c.span.start;
    entry["end"] = c.span.end;
    entry["text"] = c.text;
    out.push_back(std::move(entry));
  }
  return out;
}

Json state_view(const GameState& state) {
  Json out = Json::object();
  out["phase"] = std::string(to_string(state.phase));
  out["level"] = std::string(to_string(state.level));
  out["score"] = state.score;
  out["remaining_time"] = state.remaining_time;
  out["worms_remaining"] = state.worm_queue().size();
  if (const PreparedItem* prepared = state.current_prepared()) {
    Json worm = Json::object();
    worm["url"] = prepared->url.raw();
    worm["components"] = segmentation(prepared->url);
    out["worm"] = std::move(worm);
  } else {
    out["worm"] = nullptr;
  }
  return out;
}

}  // namespace phishpond
