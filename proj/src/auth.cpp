#include "auth.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace sl39 {

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

AuthDb AuthDb::parse(std::istream& in) {
  AuthDb db;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.size() < 6 || line[4] != ',')
      throw DbParseError(line_no, "expected CODE,NAME with a 4-digit code");
    const auto code = CardCode::parse(line.substr(0, 4));
    if (!code) throw DbParseError(line_no, "code is not 4 decimal digits");
    const std::string name = line.substr(5);
    if (name.empty()) throw DbParseError(line_no, "empty name");
    const auto [it, inserted] = db.records_.emplace(code->to_int(), name);
    (void)it;
    if (!inserted) throw DbParseError(line_no, "duplicate code " + code->to_string());
  }
  return db;
}

AuthDb AuthDb::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open database file: " + path);
  return parse(in);
}

std::optional<std::string> AuthDb::lookup(const CardCode& code) const {
  const auto it = records_.find(code.to_int());
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::string format_timestamp(std::int64_t seconds) {
  std::time_t t = static_cast<std::time_t>(seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

std::optional<std::int64_t> parse_timestamp(std::string_view text) {
  if (text.size() != 20 || text[19] != 'Z') return std::nullopt;
  std::tm tm{};
  int y, mo, d, h, mi, s;
  if (std::sscanf(std::string(text).c_str(), "%4d-%2d-%2dT%2d:%2d:%2dZ", &y, &mo, &d, &h, &mi,
                  &s) != 6)
    return std::nullopt;
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) return std::nullopt;
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = s;
  return static_cast<std::int64_t>(timegm(&tm));
}

std::string format_log_line(const LogEntry& entry) {
  return format_timestamp(entry.timestamp) + "," + entry.code.to_string() + "," + entry.name;
}

LogEntry parse_log_line(const std::string& line) {
  // TIMESTAMP,CODE,NAME with fixed-width timestamp and code
  if (line.size() < 27 || line[20] != ',' || line[25] != ',')
    throw std::invalid_argument("malformed log line");
  const auto ts = parse_timestamp(std::string_view(line).substr(0, 20));
  if (!ts) throw std::invalid_argument("malformed log timestamp");
  const auto code = CardCode::parse(std::string_view(line).substr(21, 4));
  if (!code) throw std::invalid_argument("malformed log code");
  LogEntry entry;
  entry.timestamp = *ts;
  entry.code = *code;
  entry.name = line.substr(26);
  if (entry.name.empty()) throw std::invalid_argument("empty log name");
  return entry;
}

void append_log(std::ostream& sink, const LogEntry& entry) {
  sink << format_log_line(entry) << "\n";
  if (!sink) throw std::runtime_error("log write failed");
}

std::vector<LogEntry> parse_log(std::istream& in) {
  std::vector<LogEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    entries.push_back(parse_log_line(line));
  }
  return entries;
}

PasswordGate::PasswordGate(std::string device_password, std::string factory_code)
    : device_password_(std::move(device_password)), factory_code_(std::move(factory_code)) {}

PasswordGate::Outcome PasswordGate::attempt(std::string_view password) {
  if (state_ == State::Disabled) return Outcome::LockedOut;
  if (password == device_password_) {
    attempts_ = 3;
    return Outcome::Granted;
  }
  --attempts_;
  if (attempts_ == 0) {
    state_ = State::Disabled;
    return Outcome::LockedOut;
  }
  return Outcome::Retry;
}

bool PasswordGate::factory_reset(std::string_view code) {
  if (code != factory_code_) return false;
  state_ = State::Active;
  attempts_ = 3;
  return true;
}

void PasswordGate::restore(State state, int attempts) {
  if (attempts < 0 || attempts > 3) throw std::invalid_argument("attempts outside [0,3]");
  if ((attempts == 0) != (state == State::Disabled))
    throw std::invalid_argument("attempts must be 0 exactly when disabled");
  state_ = state;
  attempts_ = attempts;
}

}  // namespace sl39
