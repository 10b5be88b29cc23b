#include "phishpond/persistence.hpp"

#include <chrono>
#include <ctime>
#include <istream>
#include <ostream>

#include "phishpond/json_codec.hpp"

namespace phishpond {

SessionRecorder::SessionRecorder(const GameConfig& config, const ContentPack& pack, std::uint64_t seed) {
  log_.header = LogHeader{config, pack.name, pack.version, seed, utc_timestamp()};
}

void SessionRecorder::record(const PlayerAction& action, const StepResult& step) {
  log_.records.push_back(EventRecord{log_.records.size(), action, step.events, step.new_state.score,
                                     step.new_state.remaining_time});
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

void write_log(const SessionLog& log, std::ostream& sink) {
  Json header = Json::object();
  header["type"] = "header";
  header["config"] = log.header.config;
  header["pack"] = Json{{"name", log.header.pack_name}, {"version", log.header.pack_version}};
  header["seed"] = log.header.seed;
  header["started_at"] = log.header.started_at;
  sink << header.dump() << '\n';

  for (const auto& record : log.records) {
    Json line = Json::object();
    line["type"] = "record";
    line["seq"] = record.seq;
    line["action"] = record.action;
    line["events"] = record.events;
    line["score_after"] = record.score_after;
    line["time_after"] = record.time_after;
    sink << line.dump() << '\n';
  }

  Json summary = Json::object();
  summary["type"] = "summary";
  summary["summary"] = log.summary ? Json(*log.summary) : Json(nullptr);
  sink << summary.dump() << '\n';
  sink.flush();
  if (!sink) throw IoFailure("failed to write session log");
}

SessionLog read_log(std::istream& source) {
  SessionLog log;
  std::string text;
  std::size_t line = 0;
  bool have_header = false;
  bool have_summary = false;
  while (std::getline(source, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    if (have_summary) throw LogFormatError(line, "content after summary line");
    try {
      const Json j = Json::parse(text);
      const std::string type = j.at("type").get<std::string>();
      if (!have_header) {
        if (type != "header") throw LogFormatError(line, "first line must be the header");
        GameConfig config;
        from_json(j.at("config"), config);
        log.header = LogHeader{config, j.at("pack").at("name").get<std::string>(),
                               j.at("pack").at("version").get<std::string>(), j.at("seed").get<std::uint64_t>(),
                               j.at("started_at").get<std::string>()};
        have_header = true;
      } else if (type == "record") {
        EventRecord record;
        record.seq = j.at("seq").get<std::uint64_t>();
        record.action = j.at("action").get<PlayerAction>();
        for (const auto& e : j.at("events")) record.events.push_back(e.get<Event>());
        record.score_after = j.at("score_after").get<std::int64_t>();
        record.time_after = j.at("time_after").get<double>();
        log.records.push_back(std::move(record));
      } else if (type == "summary") {
        if (!j.at("summary").is_null()) log.summary = j.at("summary").get<AssessmentReport>();
        have_summary = true;
      } else {
        throw LogFormatError(line, "unknown line type '" + type + "'");
      }
    } catch (const LogFormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw LogFormatError(line, e.what());
    }
  }
  if (!have_header) throw LogFormatError(line, "missing header");
  if (!have_summary) throw LogFormatError(line, "missing summary line");
  return log;
}

ReplayOutcome replay(const SessionLog& log, std::shared_ptr<const PreparedPack> content) {
  const ContentPack& pack = content->pack;
  if (pack.name != log.header.pack_name || pack.version != log.header.pack_version) {
    throw PackMismatch("log was recorded with pack " + log.header.pack_name + "@" + log.header.pack_version +
                       ", got " + pack.name + "@" + pack.version);
  }
  GameState state = new_session(log.header.config, std::move(content), log.header.seed);
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const EventRecord& record = log.records[i];
    if (record.seq != i) return ReplayOutcome::diverged(i);
    StepResult step;
    try {
      step = apply_action(state, record.action);
    } catch (const std::exception&) {
      return ReplayOutcome::diverged(record.seq);
    }
    if (step.events != record.events || step.new_state.score != record.score_after ||
        step.new_state.remaining_time != record.time_after) {
      return ReplayOutcome::diverged(record.seq);
    }
    state = std::move(step.new_state);
  }
  return ReplayOutcome::ok();
}

ReplayOutcome replay(const SessionLog& log, const ContentPack& pack) {
  if (pack.name != log.header.pack_name || pack.version != log.header.pack_version) {
    throw PackMismatch("log was recorded with pack " + log.header.pack_name + "@" + log.header.pack_version +
                       ", got " + pack.name + "@" + pack.version);
  }
  return replay(log, prepare_pack(pack));
}

}  // namespace phishpond
