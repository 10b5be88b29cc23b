#pragma once

// In-memory game sessions behind the HTTP JSON protocol.
//
//   POST /v1/session                {"seed":int,"config":{...}}  -> 201 {"session_id","state"}
//   GET  /v1/session/{id}                                         -> 200 {"state"}
//   POST /v1/session/{id}/action    {"type":..., ...}             -> 200 {"events","score_delta","state"}
//   GET  /v1/session/{id}/summary                                 -> 200 AssessmentReport
//   GET  /v1/session/{id}/log                                     -> 200 session log (JSON Lines)
//
// Errors are {"error": kind, "message": text} with 400 (bad request), 404
// (unknown session or route) or 409 (IllegalAction / SessionOver).
//
// The service is transport-agnostic: handle() takes a method, path and body.
// Actions on one session are serialized; concurrent requests wait.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "phishpond/assessment.hpp"
#include "phishpond/game_engine.hpp"
#include "phishpond/persistence.hpp"

namespace phishpond {

struct ServiceResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

class SessionService {
 public:
  explicit SessionService(std::shared_ptr<const PreparedPack> content, GameConfig defaults = {},
                          SelfEfficacyModel model = {});

  ServiceResponse handle(std::string_view method, std::string_view path, std::string_view body);

  ServiceResponse create_session(std::string_view body);
  ServiceResponse get_state(const std::string& id);
  ServiceResponse post_action(const std::string& id, std::string_view body);
  ServiceResponse get_summary(const std::string& id);
  ServiceResponse get_log(const std::string& id);

  std::size_t session_count() const;

 private:
  struct Session {
    Session(GameState initial, SessionRecorder log) : state(std::move(initial)), recorder(std::move(log)) {}

    std::mutex mutex;
    GameState state;
    KnowledgeStats stats;
    SessionRecorder recorder;
  };

  std::shared_ptr<Session> lookup(const std::string& id) const;
  std::string next_id();

  std::shared_ptr<const PreparedPack> content_;
  GameConfig defaults_;
  SelfEfficacyModel model_;

  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  Rng id_rng_;
};

}  // namespace phishpond
