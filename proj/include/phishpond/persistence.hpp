#pragma once

// Append-only session logs and replay verification.
//
// Log format, UTF-8 JSON Lines:
//   {"type":"header","config":{...},"pack":{"name":..,"version":..},"seed":N,"started_at":"..."}
//   {"type":"record","seq":N,"action":{...},"events":[...],"score_after":N,"time_after":X}  (one per action)
//   {"type":"summary","summary":{...}|null}
// Records keep both the submitted action and its outcome, so replay can tell a
// tampered log from an engine regression.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "phishpond/assessment.hpp"
#include "phishpond/content_pack.hpp"
#include "phishpond/game_engine.hpp"

namespace phishpond {

struct LogHeader {
  GameConfig config;
  std::string pack_name;
  std::string pack_version;
  std::uint64_t seed = 0;
  std::string started_at;  // ignored by replay

  friend bool operator==(const LogHeader&, const LogHeader&) = default;
};

struct EventRecord {
  std::uint64_t seq = 0;
  PlayerAction action;
  std::vector<Event> events;
  std::int64_t score_after = 0;
  double time_after = 0.0;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct SessionLog {
  LogHeader header;
  std::vector<EventRecord> records;
  std::optional<AssessmentReport> summary;

  friend bool operator==(const SessionLog&, const SessionLog&) = default;
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LogFormatError : public std::runtime_error {
 public:
  LogFormatError(std::size_t line, const std::string& reason)
      : std::runtime_error("log line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class PackMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Builds a log as a session is played.
class SessionRecorder {
 public:
  SessionRecorder(const GameConfig& config, const ContentPack& pack, std::uint64_t seed);

  void record(const PlayerAction& action, const StepResult& step);
  void set_summary(const AssessmentReport& summary) { log_.summary = summary; }

  const SessionLog& log() const { return log_; }
  SessionLog take() && { return std::move(log_); }

 private:
  SessionLog log_;
};

std::string utc_timestamp();

void write_log(const SessionLog& log, std::ostream& sink);
SessionLog read_log(std::istream& source);

struct ReplayOutcome {
  bool verified = true;
  std::uint64_t diverged_seq = 0;  // meaningful when !verified

  static ReplayOutcome ok() { return {}; }
  static ReplayOutcome diverged(std::uint64_t seq) { return {false, seq}; }

  friend bool operator==(const ReplayOutcome&, const ReplayOutcome&) = default;
};

// Re-runs the session from the header and compares every record. Throws
// PackMismatch if the pack's name or version differs from the header.
ReplayOutcome replay(const SessionLog& log, const ContentPack& pack);
ReplayOutcome replay(const SessionLog& log, std::shared_ptr<const PreparedPack> content);

}  // namespace phishpond
