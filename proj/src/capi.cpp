#include "scanline39/scanline39.h"

#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "auth.hpp"
#include "channel.hpp"
#include "code39.hpp"
#include "decode.hpp"
#include "experiment.hpp"
#include "scanline.hpp"

struct sl39_authdb {
  sl39::AuthDb db;
};

struct sl39_gate {
  sl39::PasswordGate gate;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
sl39_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const sl39::DbParseError& e) {
    set_error(e.what());
    return SL39_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SL39_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SL39_ERR_IO;
  }
}

sl39_status require(bool ok, const char* message) {
  if (ok) return SL39_OK;
  set_error(message);
  return SL39_ERR_INVALID_ARGUMENT;
}

bool to_correction(int value, sl39::CorrectionMode& out) {
  switch (value) {
    case SL39_CORRECTION_OFF: out = sl39::CorrectionMode::Off; return true;
    case SL39_CORRECTION_ON: out = sl39::CorrectionMode::On; return true;
    case SL39_CORRECTION_SYMMETRIC: out = sl39::CorrectionMode::Symmetric; return true;
    default: return false;
  }
}

int from_correction(sl39::CorrectionMode mode) {
  switch (mode) {
    case sl39::CorrectionMode::Off: return SL39_CORRECTION_OFF;
    case sl39::CorrectionMode::On: return SL39_CORRECTION_ON;
    case sl39::CorrectionMode::Symmetric: return SL39_CORRECTION_SYMMETRIC;
  }
  return SL39_CORRECTION_ON;
}

sl39::ScanConfig to_scan_config(const sl39_scan_config& cfg) {
  sl39::ScanConfig out;
  out.narrow_units = cfg.narrow_units;
  out.wide_ratio = cfg.wide_ratio;
  out.quiet_zone = cfg.quiet_zone;
  out.jitter_pct = cfg.jitter_pct;
  out.seed = cfg.seed;
  return out;
}

sl39::Pattern36 parse_pattern(const char* pattern36) {
  if (!pattern36 || std::strlen(pattern36) != sl39::kElementsPerCard)
    throw std::invalid_argument("pattern must be 36 characters of '0'/'1'");
  sl39::Pattern36 p{};
  for (int i = 0; i < sl39::kElementsPerCard; ++i) {
    const char c = pattern36[i];
    if (c != '0' && c != '1') throw std::invalid_argument("pattern characters must be '0' or '1'");
    p[static_cast<std::size_t>(i)] = c == '1' ? 1 : 0;
  }
  return p;
}

std::string pattern_string(const sl39::Pattern36& p) {
  std::string s(sl39::kElementsPerCard, '0');
  for (int i = 0; i < sl39::kElementsPerCard; ++i) {
    if (p[static_cast<std::size_t>(i)]) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

void fill_match(const sl39::MatchResult& in, sl39_match& out) {
  out.digit = in.digit;
  out.score = in.score;
  out.ambiguous = in.ambiguous ? 1 : 0;
}

void fill_report(const sl39::DecodeReport& in, sl39_report& out) {
  std::memset(&out, 0, sizeof(out));
  out.has_card = in.card.has_value() ? 1 : 0;
  if (in.card) std::memcpy(out.card, in.card->to_string().c_str(), 5);
  out.has_digits = in.have_digits ? 1 : 0;
  if (in.have_digits) {
    for (int i = 0; i < sl39::kDigitsPerCard; ++i)
      fill_match(in.digits[static_cast<std::size_t>(i)], out.digits[i]);
  }
  out.has_bits = in.have_bits ? 1 : 0;
  if (in.have_bits) std::memcpy(out.bits, pattern_string(in.bits).c_str(), 37);
  out.threshold = in.threshold;
  out.run_count = in.run_count;
  switch (in.failure) {
    case sl39::DecodeFailure::None: out.failure = SL39_DECODE_NONE; break;
    case sl39::DecodeFailure::BadRunCount: out.failure = SL39_DECODE_BAD_RUN_COUNT; break;
    case sl39::DecodeFailure::AmbiguousDigit: out.failure = SL39_DECODE_AMBIGUOUS_DIGIT; break;
  }
}

sl39::DecodeReport lift_report(const sl39_report& in) {
  sl39::DecodeReport out;
  if (in.has_card) {
    const auto card = sl39::CardCode::parse(std::string_view(in.card, 4));
    if (!card) throw std::invalid_argument("report card is not 4 digits");
    out.card = *card;
  }
  out.have_digits = in.has_digits != 0;
  if (out.have_digits) {
    for (int i = 0; i < sl39::kDigitsPerCard; ++i) {
      auto& m = out.digits[static_cast<std::size_t>(i)];
      m.digit = in.digits[i].digit;
      m.score = in.digits[i].score;
      m.ambiguous = in.digits[i].ambiguous != 0;
    }
  }
  out.have_bits = in.has_bits != 0;
  if (out.have_bits) out.bits = parse_pattern(in.bits);
  out.threshold = in.threshold;
  out.run_count = in.run_count;
  switch (in.failure) {
    case SL39_DECODE_BAD_RUN_COUNT: out.failure = sl39::DecodeFailure::BadRunCount; break;
    case SL39_DECODE_AMBIGUOUS_DIGIT: out.failure = sl39::DecodeFailure::AmbiguousDigit; break;
    default: out.failure = sl39::DecodeFailure::None; break;
  }
  return out;
}

sl39_status emit_string(const std::string& value, char** out) {
  *out = dup_string(value);
  if (!*out) {
    set_error("out of memory");
    return SL39_ERR_IO;
  }
  return SL39_OK;
}

}  // namespace

extern "C" {

const char* sl39_version(void) { return "0.1.0"; }

const char* sl39_last_error(void) { return g_last_error.c_str(); }

void sl39_free(char* p) { std::free(p); }

sl39_status sl39_encode_card(const char* code, char pattern_out[37]) {
  if (sl39_status s = require(code && pattern_out, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    const auto card = sl39::CardCode::parse(code);
    if (!card) throw std::invalid_argument("code must be exactly 4 decimal digits");
    std::memcpy(pattern_out, pattern_string(sl39::encode_card(*card)).c_str(), 37);
    return SL39_OK;
  });
}

sl39_status sl39_match_digit(const char* bits9, sl39_match* out) {
  if (sl39_status s = require(bits9 && out, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    if (std::strlen(bits9) != sl39::kElementsPerDigit)
      throw std::invalid_argument("input must be 9 characters of '0'/'1'");
    std::array<std::uint8_t, sl39::kElementsPerDigit> bits{};
    for (int i = 0; i < sl39::kElementsPerDigit; ++i) {
      if (bits9[i] != '0' && bits9[i] != '1')
        throw std::invalid_argument("input characters must be '0' or '1'");
      bits[static_cast<std::size_t>(i)] = bits9[i] == '1' ? 1 : 0;
    }
    fill_match(sl39::match_digit(bits), *out);
    return SL39_OK;
  });
}

sl39_status sl39_decode_pattern(const char* pattern36, char code_out[5],
                                sl39_match digits_out[4]) {
  if (sl39_status s = require(pattern36 && code_out, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    const sl39::CardMatch cm = sl39::decode_card(parse_pattern(pattern36));
    std::memcpy(code_out, cm.card.to_string().c_str(), 5);
    if (digits_out) {
      for (int i = 0; i < sl39::kDigitsPerCard; ++i)
        fill_match(cm.digits[static_cast<std::size_t>(i)], digits_out[i]);
    }
    return SL39_OK;
  });
}

void sl39_scan_config_defaults(sl39_scan_config* cfg) {
  if (!cfg) return;
  const sl39::ScanConfig d = sl39::ScanConfig::defaults();
  cfg->narrow_units = d.narrow_units;
  cfg->wide_ratio = d.wide_ratio;
  cfg->quiet_zone = d.quiet_zone;
  cfg->jitter_pct = d.jitter_pct;
  cfg->seed = d.seed;
}

sl39_status sl39_synthesize(const char* pattern36, const sl39_scan_config* cfg,
                            char** stream_out) {
  if (sl39_status s = require(pattern36 && cfg && stream_out, "null argument"); s != SL39_OK)
    return s;
  return guarded([&] {
    return emit_string(sl39::synthesize(parse_pattern(pattern36), to_scan_config(*cfg)),
                       stream_out);
  });
}

double sl39_preset_flip_prob(const char* name) {
  if (!name) return -1.0;
  const auto preset = sl39::channel_preset(name);
  return preset ? preset->flip_prob : -1.0;
}

sl39_status sl39_corrupt(const char* stream, double flip_prob, uint64_t seed, int burst,
                         char** stream_out) {
  if (sl39_status s = require(stream && stream_out, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    const sl39::SymbolStream in(stream);
    if (!sl39::stream_is_valid(in))
      throw std::invalid_argument("stream has symbols other than '0'/'5'");
    return emit_string(burst ? sl39::corrupt_bursty(in, flip_prob, seed)
                             : sl39::corrupt(in, flip_prob, seed),
                       stream_out);
  });
}

sl39_status sl39_measure_ser(const char* a, const char* b, double* ser_out) {
  if (sl39_status s = require(a && b && ser_out, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    *ser_out = sl39::measure_ser(a, b);
    return SL39_OK;
  });
}

sl39_status sl39_correct_errors(const char* stream, sl39_correction mode, char** stream_out) {
  if (sl39_status s = require(stream && stream_out, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    sl39::CorrectionMode m;
    if (!to_correction(mode, m)) throw std::invalid_argument("bad correction mode");
    return emit_string(sl39::correct_errors(stream, m), stream_out);
  });
}

sl39_status sl39_decode_stream(const char* stream, int strict, sl39_correction mode,
                               sl39_report* report_out) {
  if (sl39_status s = require(stream && report_out, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    sl39::CorrectionMode m;
    if (!to_correction(mode, m)) throw std::invalid_argument("bad correction mode");
    fill_report(sl39::decode_stream(stream, sl39::DecodeOptions{strict != 0, m}), *report_out);
    return SL39_OK;
  });
}

sl39_status sl39_report_text(const sl39_report* report, char** text_out) {
  if (sl39_status s = require(report && text_out, "null argument"); s != SL39_OK) return s;
  return guarded([&] { return emit_string(sl39::report_text(lift_report(*report)), text_out); });
}

sl39_status sl39_report_record(const sl39_report* report, char** line_out) {
  if (sl39_status s = require(report && line_out, "null argument"); s != SL39_OK) return s;
  return guarded([&] { return emit_string(sl39::report_record(lift_report(*report)), line_out); });
}

sl39_status sl39_authdb_load(const char* path, sl39_authdb** db_out) {
  if (sl39_status s = require(path && db_out, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    *db_out = new sl39_authdb{sl39::AuthDb::load_file(path)};
    return SL39_OK;
  });
}

sl39_status sl39_authdb_parse(const char* text, sl39_authdb** db_out) {
  if (sl39_status s = require(text && db_out, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    std::istringstream in{std::string(text)};
    *db_out = new sl39_authdb{sl39::AuthDb::parse(in)};
    return SL39_OK;
  });
}

sl39_status sl39_authdb_lookup(const sl39_authdb* db, const char* code, char* name_out,
                               size_t name_cap) {
  if (sl39_status s = require(db && code, "null argument"); s != SL39_OK) return s;
  return guarded([&]() -> sl39_status {
    const auto card = sl39::CardCode::parse(code);
    if (!card) throw std::invalid_argument("code must be exactly 4 decimal digits");
    const auto name = db->db.lookup(*card);
    if (!name) return SL39_NOT_FOUND;
    if (name_out) {
      if (name->size() + 1 > name_cap) {
        set_error("name buffer too small");
        return SL39_ERR_BUFFER_TOO_SMALL;
      }
      std::memcpy(name_out, name->c_str(), name->size() + 1);
    }
    return SL39_OK;
  });
}

size_t sl39_authdb_size(const sl39_authdb* db) { return db ? db->db.size() : 0; }

void sl39_authdb_close(sl39_authdb* db) { delete db; }

sl39_status sl39_log_append(const char* path, const char* when_utc, const char* code,
                            const char* name) {
  if (sl39_status s = require(path && code && name, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    sl39::LogEntry entry;
    if (when_utc) {
      const auto ts = sl39::parse_timestamp(when_utc);
      if (!ts) throw std::invalid_argument("timestamp must be YYYY-MM-DDTHH:MM:SSZ");
      entry.timestamp = *ts;
    } else {
      entry.timestamp = static_cast<std::int64_t>(std::time(nullptr));
    }
    const auto card = sl39::CardCode::parse(code);
    if (!card) throw std::invalid_argument("code must be exactly 4 decimal digits");
    entry.code = *card;
    entry.name = name;
    if (entry.name.empty()) throw std::invalid_argument("empty name");
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error(std::string("cannot open log file: ") + path);
    sl39::append_log(out, entry);
    return SL39_OK;
  });
}

sl39_status sl39_gate_new(const char* device_password, const char* factory_code,
                          sl39_gate** gate_out) {
  if (sl39_status s = require(device_password && factory_code && gate_out, "null argument");
      s != SL39_OK)
    return s;
  return guarded([&] {
    *gate_out = new sl39_gate{sl39::PasswordGate(device_password, factory_code)};
    return SL39_OK;
  });
}

sl39_status sl39_gate_attempt(sl39_gate* gate, const char* password, int* outcome_out) {
  if (sl39_status s = require(gate && password && outcome_out, "null argument"); s != SL39_OK)
    return s;
  switch (gate->gate.attempt(password)) {
    case sl39::PasswordGate::Outcome::Granted: *outcome_out = SL39_GATE_GRANTED; break;
    case sl39::PasswordGate::Outcome::Retry: *outcome_out = SL39_GATE_RETRY; break;
    case sl39::PasswordGate::Outcome::LockedOut: *outcome_out = SL39_GATE_LOCKED_OUT; break;
  }
  return SL39_OK;
}

sl39_status sl39_gate_factory_reset(sl39_gate* gate, const char* code, int* ok_out) {
  if (sl39_status s = require(gate && code && ok_out, "null argument"); s != SL39_OK) return s;
  *ok_out = gate->gate.factory_reset(code) ? 1 : 0;
  return SL39_OK;
}

int sl39_gate_disabled(const sl39_gate* gate) {
  return gate && gate->gate.state() == sl39::PasswordGate::State::Disabled ? 1 : 0;
}

int sl39_gate_attempts_remaining(const sl39_gate* gate) {
  return gate ? gate->gate.attempts_remaining() : 0;
}

sl39_status sl39_gate_restore(sl39_gate* gate, int disabled, int attempts) {
  if (sl39_status s = require(gate != nullptr, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    gate->gate.restore(disabled ? sl39::PasswordGate::State::Disabled
                                : sl39::PasswordGate::State::Active,
                       attempts);
    return SL39_OK;
  });
}

void sl39_gate_close(sl39_gate* gate) { delete gate; }

sl39_status sl39_experiment_run(const sl39_experiment_spec* spec, sl39_experiment_row** rows_out,
                                size_t* n_rows_out) {
  if (sl39_status s = require(spec && rows_out && n_rows_out, "null argument"); s != SL39_OK)
    return s;
  return guarded([&] {
    sl39::ExperimentSpec es;
    es.flip_probs.assign(spec->flip_probs, spec->flip_probs + spec->n_probs);
    es.modes.clear();
    if (spec->corrections && spec->n_corrections > 0) {
      for (size_t i = 0; i < spec->n_corrections; ++i) {
        sl39::CorrectionMode m;
        if (!to_correction(spec->corrections[i], m))
          throw std::invalid_argument("bad correction mode");
        es.modes.push_back(m);
      }
    } else {
      es.modes.push_back(sl39::CorrectionMode::On);
    }
    es.trials = spec->trials;
    es.base_seed = spec->base_seed;
    es.scan = to_scan_config(spec->scan);
    if (spec->fixed_code) {
      const auto card = sl39::CardCode::parse(spec->fixed_code);
      if (!card) throw std::invalid_argument("fixed code must be exactly 4 decimal digits");
      es.fixed_code = *card;
    }
    es.strict = spec->strict != 0;
    es.burst = spec->burst != 0;

    const auto rows = sl39::run_experiment(es);
    auto* out = static_cast<sl39_experiment_row*>(
        std::malloc(sizeof(sl39_experiment_row) * rows.size()));
    if (!out && !rows.empty()) throw std::bad_alloc();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out[i].flip_prob = rows[i].flip_prob;
      out[i].correction = from_correction(rows[i].mode);
      out[i].trials = rows[i].trials;
      out[i].success_rate = rows[i].success_rate;
      out[i].residual_ser = rows[i].residual_ser;
      out[i].digit_errors = rows[i].digit_errors;
    }
    *rows_out = out;
    *n_rows_out = rows.size();
    return SL39_OK;
  });
}

void sl39_rows_free(sl39_experiment_row* rows) { std::free(rows); }

const char* sl39_experiment_csv_header(void) { return sl39::kCsvHeader; }

sl39_status sl39_experiment_csv_row(const sl39_experiment_row* row, char** line_out) {
  if (sl39_status s = require(row && line_out, "null argument"); s != SL39_OK) return s;
  return guarded([&] {
    sl39::ExperimentRow r;
    r.flip_prob = row->flip_prob;
    sl39::CorrectionMode m;
    if (!to_correction(row->correction, m)) throw std::invalid_argument("bad correction mode");
    r.mode = m;
    r.trials = row->trials;
    r.success_rate = row->success_rate;
    r.residual_ser = row->residual_ser;
    r.digit_errors = row->digit_errors;
    return emit_string(sl39::csv_row(r), line_out);
  });
}

}  // extern "C"
