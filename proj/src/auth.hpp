#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "code39.hpp"

namespace sl39 {

/// Name recorded for rejected codes when deny logging is enabled.
inline constexpr const char* kDeniedName = "DENIED";

struct UserRecord {
  CardCode code;
  std::string name;
};

class DbParseError : public std::runtime_error {
public:
  DbParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Authorized-user database backed by a plain text file: one `CODE,NAME`
/// per line (exactly four digits, comma, rest of line as the name). Blank
/// lines and lines starting with '#' are skipped. Immutable once parsed, so
/// it can be shared across threads freely.
class AuthDb {
public:
  static AuthDb parse(std::istream& in);             // throws DbParseError
  static AuthDb load_file(const std::string& path);  // throws on open failure too

  std::optional<std::string> lookup(const CardCode& code) const;
  std::size_t size() const { return records_.size(); }

private:
  std::map<int, std::string> records_;
};

/// One audit-log line: ISO-8601 UTC timestamp at second precision, the code
/// and the user name, comma separated. Timestamps are expected to be
/// non-decreasing within a file; ordering is the writer's responsibility.
struct LogEntry {
  std::int64_t timestamp = 0;  // seconds since the Unix epoch, UTC
  CardCode code;
  std::string name;

  bool operator==(const LogEntry&) const = default;
};

std::string format_timestamp(std::int64_t seconds);
std::optional<std::int64_t> parse_timestamp(std::string_view text);

std::string format_log_line(const LogEntry& entry);
LogEntry parse_log_line(const std::string& line);  // throws std::invalid_argument

void append_log(std::ostream& sink, const LogEntry& entry);
std::vector<LogEntry> parse_log(std::istream& in);

/// Three-strike device gate. Wrong passwords burn attempts; the third in a
/// row disables the gate until the factory code is presented. Transitions
/// must be serialized by the owning caller.
class PasswordGate {
public:
  enum class State { Active, Disabled };
  enum class Outcome { Granted, Retry, LockedOut };

  PasswordGate(std::string device_password, std::string factory_code);

  Outcome attempt(std::string_view password);
  bool factory_reset(std::string_view code);

  State state() const { return state_; }
  int attempts_remaining() const { return attempts_; }

  /// Reinstates persisted state. Throws unless attempts is in [0,3] and
  /// zero exactly when disabled.
  void restore(State state, int attempts);

private:
  std::string device_password_;
  std::string factory_code_;
  State state_ = State::Active;
  int attempts_ = 3;
};

}  // namespace sl39
