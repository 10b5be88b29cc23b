#include "phishpond/session_service.hpp"

#include <cstdio>
#include <random>
#include <sstream>

#include "phishpond/json_codec.hpp"

namespace phishpond {

namespace {

ServiceResponse json_response(int status, const Json& body) { return {status, body.dump(), "application/json"}; }

ServiceResponse error_response(int status, std::string_view kind, std::string_view message) {
  Json body = Json::object();
  body["error"] = kind;
  body["message"] = message;
  return json_response(status, body);
}

std::vector<std::string_view> path_parts(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    auto slash = path.find('/', start);
    if (slash == std::string_view::npos) slash = path.size();
    if (slash > start) parts.push_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return parts;
}

Json parse_body(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return Json::object();
  return Json::parse(body);
}

}  // namespace

SessionService::SessionService(std::shared_ptr<const PreparedPack> content, GameConfig defaults,
                               SelfEfficacyModel model)
    : content_(std::move(content)), defaults_(defaults), model_(model), id_rng_(std::random_device{}()) {
  defaults_.validate();
  model_.validate();
}

std::size_t SessionService::session_count() const {
  std::lock_guard lock(sessions_mutex_);
  return sessions_.size();
}

std::string SessionService::next_id() {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(id_rng_.next()));
  return buffer;
}

std::shared_ptr<SessionService::Session> SessionService::lookup(const std::string& id) const {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

ServiceResponse SessionService::create_session(std::string_view body) {
  GameConfig config = defaults_;
  std::uint64_t seed = 0;
  try {
    const Json request = parse_body(body);
    if (!request.is_object()) return error_response(400, "BadRequest", "body must be a JSON object");
    for (const auto& [key, value] : request.items()) {
      if (key != "seed" && key != "config") return error_response(400, "BadRequest", "unknown field '" + key + "'");
    }
    if (auto it = request.find("seed"); it != request.end()) {
      if (!it->is_number_unsigned()) return error_response(400, "BadRequest", "seed must be a non-negative integer");
      seed = it->get<std::uint64_t>();
    }
    if (auto it = request.find("config"); it != request.end()) from_json(*it, config);
    config.validate();
  } catch (const std::exception& e) {
    return error_response(400, "BadRequest", e.what());
  }

  std::shared_ptr<Session> session;
  try {
    session = std::make_shared<Session>(new_session(config, content_, seed), SessionRecorder(config, content_->pack, seed));
  } catch (const InsufficientPack& e) {
    return error_response(400, "InsufficientPack", e.what());
  }

  std::string id;
  {
    std::lock_guard lock(sessions_mutex_);
    do {
      id = next_id();
    } while (sessions_.contains(id));
    sessions_.emplace(id, session);
  }
  Json response = Json::object();
  response["session_id"] = id;
  {
    std::lock_guard lock(session->mutex);
    response["state"] = state_view(session->state);
  }
  return json_response(201, response);
}

ServiceResponse SessionService::get_state(const std::string& id) {
  auto session = lookup(id);
  if (!session) return error_response(404, "UnknownSession", "no session " + id);
  std::lock_guard lock(session->mutex);
  Json response = Json::object();
  response["state"] = state_view(session->state);
  return json_response(200, response);
}

ServiceResponse SessionService::post_action(const std::string& id, std::string_view body) {
  auto session = lookup(id);
  if (!session) return error_response(404, "UnknownSession", "no session " + id);
  PlayerAction action;
  try {
    action = parse_body(body).get<PlayerAction>();
  } catch (const std::exception& e) {
    return error_response(400, "BadRequest", e.what());
  }

  std::lock_guard lock(session->mutex);
  StepResult step;
  try {
    step = apply_action(session->state, action);
  } catch (const IllegalAction& e) {
    return error_response(409, "IllegalAction", e.what());
  } catch (const SessionOver& e) {
    return error_response(409, "SessionOver", e.what());
  } catch (const std::invalid_argument& e) {
    return error_response(400, "BadRequest", e.what());
  }
  session->stats = update_stats(session->stats, step);
  session->recorder.record(action, step);
  session->state = std::move(step.new_state);

  Json response = Json::object();
  response["events"] = step.events;
  response["score_delta"] = step.score_delta;
  response["state"] = state_view(session->state);
  return json_response(200, response);
}

ServiceResponse SessionService::get_summary(const std::string& id) {
  auto session = lookup(id);
  if (!session) return error_response(404, "UnknownSession", "no session " + id);
  std::lock_guard lock(session->mutex);
  return json_response(200, Json(assess(session->stats, model_)));
}

ServiceResponse SessionService::get_log(const std::string& id) {
  auto session = lookup(id);
  if (!session) return error_response(404, "UnknownSession", "no session " + id);
  std::lock_guard lock(session->mutex);
  SessionLog log = session->recorder.log();
  log.summary = assess(session->stats, model_);
  std::ostringstream out;
  write_log(log, out);
  return {200, out.str(), "application/x-ndjson"};
}

ServiceResponse SessionService::handle(std::string_view method, std::string_view path, std::string_view body) {
  const auto parts = path_parts(path);
  if (parts.size() < 2 || parts[0] != "v1" || parts[1] != "session") {
    return error_response(404, "NotFound", "no route " + std::string(path));
  }
  if (parts.size() == 2 && method == "POST") return create_session(body);
  if (parts.size() == 3 && method == "GET") return get_state(std::string(parts[2]));
  if (parts.size() == 4) {
    const std::string id(parts[2]);
    if (parts[3] == "action" && method == "POST") return post_action(id, body);
    if (parts[3] == "summary" && method == "GET") return get_summary(id);
    if (parts[3] == "log" && method == "GET") return get_log(id);
  }
  return error_response(404, "NotFound", "no route " + std::string(method) + " " + std::string(path));
}

}  // namespace phishpond
