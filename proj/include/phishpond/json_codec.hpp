#pragma once

// JSON encodings shared by the pack loader, session logs, the CLI and the
// session service. Field names here are the wire format.

#include "json.hpp"

#include "phishpond/assessment.hpp"
#include "phishpond/content_pack.hpp"
#include "phishpond/game_engine.hpp"
#include "phishpond/persistence.hpp"
#include "phishpond/phish_rules.hpp"
#include "phishpond/url_model.hpp"

namespace phishpond {

using Json = nlohmann::ordered_json;

// Thrown by the decoders below on missing, mistyped or unknown fields.
class JsonSchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void to_json(Json& j, const Span& span);
void to_json(Json& j, const ComponentId& id);
void from_json(const Json& j, ComponentId& id);

void to_json(Json& j, const PackItem& item);
void from_json(const Json& j, PackItem& item);

void to_json(Json& j, const Finding& finding);
void to_json(Json& j, const AnalysisReport& report);

void to_json(Json& j, const GameConfig& config);
// Starts from the current value of config and applies the fields present, so
// a partial object overrides only what it names.
void from_json(const Json& j, GameConfig& config);

void to_json(Json& j, const PlayerAction& action);
void from_json(const Json& j, PlayerAction& action);

void to_json(Json& j, const Event& event);
void from_json(const Json& j, Event& event);

void to_json(Json& j, const KnowledgeStats& stats);
void from_json(const Json& j, KnowledgeStats& stats);

void to_json(Json& j, const AssessmentReport& report);
void from_json(const Json& j, AssessmentReport& report);

void to_json(Json& j, const SelfEfficacyModel& model);
void from_json(const Json& j, SelfEfficacyModel& model);

// Rule catalog for the UI and docs: id, name, severity, description, hint,
// paper_anchored.
Json rule_catalog(const RuleSet& rules);

// Player-facing view of a session. Never includes the worm's label or its
// phishing components.
Json state_view(const GameState& state);

// The URL's component table: kind, index, start, end, text.
Json segmentation(const ParsedUrl& url);

}  // namespace phishpond
