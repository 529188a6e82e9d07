// Operator CLI for the scanline39 shared library. Everything below talks to
// the library through the public C interface.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scanline39/scanline39.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // domain failure / reject
constexpr int kExitUsage = 2;

struct FreeString {
  void operator()(char* p) const { sl39_free(p); }
};
using OwnedString = std::unique_ptr<char, FreeString>;

[[noreturn]] void die_usage(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(kExitUsage);
}

[[noreturn]] void die_domain(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(kExitFailure);
}

struct ScanFlags {
  int narrow_units = 0;
  double wide_ratio = 0.0;
  int quiet_zone = -1;  // -1: use 3 * narrow_units
  double jitter = 0.0;
  std::uint64_t seed = 0;

  void add_options(CLI::App* cmd, bool with_seed) {
    sl39_scan_config d;
    sl39_scan_config_defaults(&d);
    narrow_units = d.narrow_units;
    wide_ratio = d.wide_ratio;
    jitter = d.jitter_pct;
    cmd->add_option("--narrow-units", narrow_units, "Samples per narrow element")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--wide-ratio", wide_ratio, "Wide/narrow width ratio");
    cmd->add_option("--quiet-zone", quiet_zone, "Quiet zone samples (default 3x narrow)");
    cmd->add_option("--jitter", jitter, "Per-element width perturbation bound");
    if (with_seed) {
      cmd->add_option("--seed", seed, "RNG seed")->envname("SCANLINE39_SEED");
    }
  }

  sl39_scan_config config() const {
    sl39_scan_config cfg;
    sl39_scan_config_defaults(&cfg);
    cfg.narrow_units = narrow_units;
    cfg.wide_ratio = wide_ratio;
    cfg.quiet_zone = quiet_zone >= 0 ? quiet_zone : 3 * narrow_units;
    cfg.jitter_pct = jitter;
    cfg.seed = seed;
    return cfg;
  }
};

struct ChannelFlags {
  std::string channel = "none";
  double flip_prob = -1.0;
  bool burst = false;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--channel", channel, "Channel preset: none, wired or wireless")
        ->check(CLI::IsMember({"none", "wired", "wireless"}));
    cmd->add_option("--flip-prob", flip_prob, "Symbol flip probability (overrides --channel)");
    cmd->add_flag("--burst", burst, "Group flips into runs of one or two symbols");
  }

  double effective_prob() const {
    if (flip_prob >= 0.0) {
      if (flip_prob > 1.0) die_usage("--flip-prob must be in [0,1]");
      return flip_prob;
    }
    return sl39_preset_flip_prob(channel.c_str());
  }
};

sl39_correction parse_correction(const std::string& name) {
  if (name == "off") return SL39_CORRECTION_OFF;
  if (name == "on") return SL39_CORRECTION_ON;
  if (name == "symmetric") return SL39_CORRECTION_SYMMETRIC;
  die_usage("--correction must be on, off or symmetric");
}

const char* correction_label(int mode) {
  switch (mode) {
    case SL39_CORRECTION_OFF: return "off";
    case SL39_CORRECTION_ON: return "on";
    case SL39_CORRECTION_SYMMETRIC: return "symmetric";
  }
  return "?";
}

std::string encode_or_die(const std::string& code) {
  char pattern[37];
  if (sl39_encode_card(code.c_str(), pattern) != SL39_OK) die_usage(sl39_last_error());
  return pattern;
}

void print_report(const sl39_report& report, bool record) {
  OwnedString text;
  char* raw = nullptr;
  const sl39_status st = record ? sl39_report_record(&report, &raw) : sl39_report_text(&report, &raw);
  if (st != SL39_OK) die_domain(sl39_last_error());
  text.reset(raw);
  std::cout << text.get();
  if (record) std::cout << "\n";
}

int cmd_encode(const std::string& code) {
  const std::string pattern = encode_or_die(code);
  std::cout << pattern << "\n";
  // one column per narrow element, three per wide
  std::string art;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const bool bar = (i % 9) % 2 == 0;
    const int width = pattern[i] == '1' ? 3 : 1;
    art.append(static_cast<std::size_t>(width), bar ? '#' : ' ');
  }
  std::cout << art << "\n";
  return kExitOk;
}

int cmd_synth(const std::string& code, const ScanFlags& scan) {
  const std::string pattern = encode_or_die(code);
  const sl39_scan_config cfg = scan.config();
  char* raw = nullptr;
  if (sl39_synthesize(pattern.c_str(), &cfg, &raw) != SL39_OK) die_usage(sl39_last_error());
  OwnedString stream(raw);
  std::cout << stream.get() << "\n";
  return kExitOk;
}

std::string read_stream_line(const std::string& path) {
  std::string line;
  if (path.empty() || path == "-") {
    if (!std::getline(std::cin, line)) die_domain("no input stream");
  } else {
    std::ifstream in(path);
    if (!in) die_domain("cannot open " + path);
    if (!std::getline(in, line)) die_domain("no input stream in " + path);
  }
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
  return line;
}

int cmd_decode(const std::string& path, bool strict, sl39_correction mode, bool record) {
  const std::string stream = read_stream_line(path);
  sl39_report report;
  if (sl39_decode_stream(stream.c_str(), strict ? 1 : 0, mode, &report) != SL39_OK)
    die_domain(sl39_last_error());
  print_report(report, record);
  return report.has_card ? kExitOk : kExitFailure;
}

int cmd_pipeline(const std::string& code, const std::string& db_path, const ScanFlags& scan,
                 const ChannelFlags& channel, bool strict, sl39_correction mode,
                 const std::string& log_path, bool log_success_only, bool record) {
  const std::string pattern = encode_or_die(code);

  const sl39_scan_config cfg = scan.config();
  char* raw = nullptr;
  if (sl39_synthesize(pattern.c_str(), &cfg, &raw) != SL39_OK) die_usage(sl39_last_error());
  OwnedString clean(raw);

  const double prob = channel.effective_prob();
  raw = nullptr;
  if (sl39_corrupt(clean.get(), prob, scan.seed, channel.burst ? 1 : 0, &raw) != SL39_OK)
    die_usage(sl39_last_error());
  OwnedString noisy(raw);

  sl39_report report;
  if (sl39_decode_stream(noisy.get(), strict ? 1 : 0, mode, &report) != SL39_OK)
    die_domain(sl39_last_error());
  print_report(report, record);

  sl39_authdb* db = nullptr;
  if (sl39_authdb_load(db_path.c_str(), &db) != SL39_OK) die_domain(sl39_last_error());

  char name[256];
  bool accepted = false;
  std::string logged_code = code;
  std::string logged_name = "DENIED";
  if (report.has_card) {
    logged_code = report.card;
    const sl39_status st = sl39_authdb_lookup(db, report.card, name, sizeof(name));
    if (st == SL39_OK) {
      accepted = true;
      logged_name = name;
    } else if (st != SL39_NOT_FOUND) {
      sl39_authdb_close(db);
      die_domain(sl39_last_error());
    }
  }
  sl39_authdb_close(db);

  if (!log_path.empty() && (accepted || !log_success_only)) {
    if (sl39_log_append(log_path.c_str(), nullptr, logged_code.c_str(), logged_name.c_str()) !=
        SL39_OK)
      die_domain(sl39_last_error());
  }

  if (accepted) {
    std::cout << "auth: accept " << logged_name << "\n";
    return kExitOk;
  }
  std::cout << "auth: reject\n";
  return kExitFailure;
}

int cmd_experiment(std::vector<double> probs, const std::string& channel,
                   const std::vector<std::string>& corrections, int trials, std::uint64_t seed,
                   const ScanFlags& scan, const std::string& fixed_code, bool strict, bool burst,
                   bool table) {
  if (probs.empty()) {
    if (!channel.empty()) {
      const double p = sl39_preset_flip_prob(channel.c_str());
      if (p < 0.0) die_usage("unknown channel preset");
      probs.push_back(p);
    } else {
      probs = {0.0, 0.005, 0.02, 0.05};
    }
  }
  for (double p : probs) {
    if (p < 0.0 || p > 1.0) die_usage("--flip-prob must be in [0,1]");
  }
  std::vector<int> modes;
  for (const auto& name : corrections) modes.push_back(parse_correction(name));
  if (modes.empty()) modes.push_back(SL39_CORRECTION_ON);

  sl39_experiment_spec spec{};
  spec.flip_probs = probs.data();
  spec.n_probs = probs.size();
  spec.corrections = modes.data();
  spec.n_corrections = modes.size();
  spec.trials = trials;
  spec.base_seed = seed;
  spec.scan = scan.config();
  spec.fixed_code = fixed_code.empty() ? nullptr : fixed_code.c_str();
  spec.strict = strict ? 1 : 0;
  spec.burst = burst ? 1 : 0;

  sl39_experiment_row* rows = nullptr;
  size_t n_rows = 0;
  if (sl39_experiment_run(&spec, &rows, &n_rows) != SL39_OK) die_usage(sl39_last_error());

  if (table) {
    std::printf("%10s %10s %8s %13s %13s %13s\n", "flip_prob", "correction", "trials",
                "success_rate", "residual_ser", "digit_errors");
    for (size_t i = 0; i < n_rows; ++i) {
      std::printf("%10g %10s %8d %13.6f %13.6f %13.6f\n", rows[i].flip_prob,
                  correction_label(rows[i].correction), rows[i].trials, rows[i].success_rate,
                  rows[i].residual_ser, rows[i].digit_errors);
    }
  } else {
    std::cout << sl39_experiment_csv_header() << "\n";
    for (size_t i = 0; i < n_rows; ++i) {
      char* line = nullptr;
      if (sl39_experiment_csv_row(&rows[i], &line) != SL39_OK) {
        sl39_rows_free(rows);
        die_domain(sl39_last_error());
      }
      OwnedString owned(line);
      std::cout << owned.get() << "\n";
    }
  }
  sl39_rows_free(rows);
  return kExitOk;
}

// Gate state persists between invocations in a two-line text file.
struct GateState {
  bool disabled = false;
  int attempts = 3;
};

GateState load_gate_state(const std::string& path) {
  GateState st;
  std::ifstream in(path);
  if (!in) return st;  // missing file: fresh gate
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("attempts=", 0) == 0) st.attempts = std::atoi(line.c_str() + 9);
    if (line.rfind("state=", 0) == 0) st.disabled = line.substr(6) == "disabled";
  }
  return st;
}

void save_gate_state(const std::string& path, const GateState& st) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) die_domain("cannot write " + path);
  out << "attempts=" << st.attempts << "\n";
  out << "state=" << (st.disabled ? "disabled" : "active") << "\n";
}

sl39_gate* open_gate(const std::string& password, const std::string& factory,
                     const GateState& st) {
  sl39_gate* gate = nullptr;
  if (sl39_gate_new(password.c_str(), factory.c_str(), &gate) != SL39_OK)
    die_domain(sl39_last_error());
  if (sl39_gate_restore(gate, st.disabled ? 1 : 0, st.attempts) != SL39_OK) {
    sl39_gate_close(gate);
    die_domain(std::string("corrupt gate state: ") + sl39_last_error());
  }
  return gate;
}

void print_gate_status(const sl39_gate* gate) {
  std::cout << "state: " << (sl39_gate_disabled(gate) ? "disabled" : "active")
            << " attempts_remaining: " << sl39_gate_attempts_remaining(gate) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infrared barcode card toolchain (Code 39 over a '0'/'5' symbol stream)"};
  app.require_subcommand(1);

  int result = kExitOk;

  // encode
  std::string encode_code;
  auto* encode = app.add_subcommand("encode", "Print the 36 width flags and a bar rendering");
  encode->add_option("code", encode_code, "4-digit card code")->required();
  encode->callback([&] { result = cmd_encode(encode_code); });

  // synth
  std::string synth_code;
  ScanFlags synth_scan;
  auto* synth = app.add_subcommand("synth", "Synthesize the raw scanner symbol stream");
  synth->add_option("code", synth_code, "4-digit card code")->required();
  synth_scan.add_options(synth, true);
  synth->callback([&] { result = cmd_synth(synth_code, synth_scan); });

  // decode
  std::string decode_in;
  bool decode_strict = true;
  std::string decode_correction = "on";
  bool decode_record = false;
  auto* decode = app.add_subcommand("decode", "Decode a symbol stream from a file or stdin");
  decode->add_option("--in", decode_in, "Stream file ('-' for stdin)");
  decode->add_flag("--strict,!--no-strict", decode_strict, "Fail on ambiguous digits (default)");
  decode->add_option("--correction", decode_correction, "on, off or symmetric");
  decode->add_flag("--record", decode_record, "Single-line machine record");
  decode->callback([&] {
    result = cmd_decode(decode_in, decode_strict, parse_correction(decode_correction),
                        decode_record);
  });

  // pipeline
  std::string pl_code, pl_db, pl_log;
  ScanFlags pl_scan;
  ChannelFlags pl_channel;
  bool pl_strict = true;
  std::string pl_correction = "on";
  bool pl_log_success_only = false;
  bool pl_record = false;
  auto* pipeline =
      app.add_subcommand("pipeline", "Encode, scan, corrupt, decode and authenticate a card");
  pipeline->add_option("code", pl_code, "4-digit card code")->required();
  pipeline->add_option("--db", pl_db, "Authorized-user database file")->required();
  pipeline->add_option("--log", pl_log, "Audit log file to append to");
  pipeline->add_flag("--log-success-only", pl_log_success_only,
                     "Do not write DENIED entries for rejects");
  pl_scan.add_options(pipeline, true);
  pl_channel.add_options(pipeline);
  pipeline->add_flag("--strict,!--no-strict", pl_strict, "Fail on ambiguous digits (default)");
  pipeline->add_option("--correction", pl_correction, "on, off or symmetric");
  pipeline->add_flag("--record", pl_record, "Single-line machine record");
  pipeline->callback([&] {
    result = cmd_pipeline(pl_code, pl_db, pl_scan, pl_channel, pl_strict,
                          parse_correction(pl_correction), pl_log, pl_log_success_only, pl_record);
  });

  // experiment
  std::vector<double> ex_probs;
  std::string ex_channel;
  std::vector<std::string> ex_corrections;
  int ex_trials = 1000;
  ScanFlags ex_scan;
  std::string ex_code;
  bool ex_strict = true;
  bool ex_burst = false;
  bool ex_table = false;
  auto* experiment =
      app.add_subcommand("experiment", "Seeded Monte Carlo sweep; prints CSV rows");
  experiment->add_option("--flip-prob", ex_probs,
                         "Flip probability; repeat for a sweep (default 0 0.005 0.02 0.05)");
  experiment->add_option("--channel", ex_channel, "Single preset instead of --flip-prob")
      ->check(CLI::IsMember({"none", "wired", "wireless"}));
  experiment->add_option("--correction", ex_corrections,
                         "Correction mode; repeat to compare (default on)");
  experiment->add_option("--trials", ex_trials, "Trials per row")->check(CLI::PositiveNumber);
  experiment->add_option("--code", ex_code, "Fixed card code (default: random per trial)");
  ex_scan.add_options(experiment, true);
  experiment->add_flag("--strict,!--no-strict", ex_strict, "Fail on ambiguous digits (default)");
  experiment->add_flag("--burst", ex_burst, "Bursty channel");
  experiment->add_flag("--table", ex_table, "Pretty-print instead of CSV");
  experiment->callback([&] {
    result = cmd_experiment(ex_probs, ex_channel, ex_corrections, ex_trials, ex_scan.seed,
                            ex_scan, ex_code, ex_strict, ex_burst, ex_table);
  });

  // gate
  std::string gate_state_path = "gate.state";
  std::string gate_password, gate_factory;
  auto* gate = app.add_subcommand("gate", "Drive the 3-strike device password gate");
  gate->require_subcommand(1);
  gate->add_option("--state", gate_state_path, "Gate state file");
  gate->add_option("--device-password", gate_password, "Expected device password")
      ->envname("SCANLINE39_DEVICE_PASSWORD");
  gate->add_option("--factory-code", gate_factory, "Factory reset code")
      ->envname("SCANLINE39_FACTORY_CODE");

  std::string attempt_pwd;
  auto* gate_attempt = gate->add_subcommand("attempt", "Present a password");
  gate_attempt->add_option("password", attempt_pwd, "Password to present")->required();
  gate_attempt->callback([&] {
    sl39_gate* g = open_gate(gate_password, gate_factory, load_gate_state(gate_state_path));
    int outcome = SL39_GATE_LOCKED_OUT;
    sl39_gate_attempt(g, attempt_pwd.c_str(), &outcome);
    GateState st{sl39_gate_disabled(g) != 0, sl39_gate_attempts_remaining(g)};
    save_gate_state(gate_state_path, st);
    switch (outcome) {
      case SL39_GATE_GRANTED: std::cout << "granted\n"; break;
      case SL39_GATE_RETRY: std::cout << "retry (" << st.attempts << " attempts left)\n"; break;
      default: std::cout << "locked_out\n"; break;
    }
    sl39_gate_close(g);
    result = outcome == SL39_GATE_GRANTED ? kExitOk : kExitFailure;
  });

  std::string reset_code;
  auto* gate_reset = gate->add_subcommand("reset", "Present the factory reset code");
  gate_reset->add_option("code", reset_code, "Factory code")->required();
  gate_reset->callback([&] {
    sl39_gate* g = open_gate(gate_password, gate_factory, load_gate_state(gate_state_path));
    int ok = 0;
    sl39_gate_factory_reset(g, reset_code.c_str(), &ok);
    save_gate_state(gate_state_path,
                    GateState{sl39_gate_disabled(g) != 0, sl39_gate_attempts_remaining(g)});
    std::cout << (ok ? "reset\n" : "rejected\n");
    sl39_gate_close(g);
    result = ok ? kExitOk : kExitFailure;
  });

  auto* gate_status = gate->add_subcommand("status", "Show gate state");
  gate_status->callback([&] {
    sl39_gate* g = open_gate(gate_password, gate_factory, load_gate_state(gate_state_path));
    print_gate_status(g);
    sl39_gate_close(g);
    result = kExitOk;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return result;
}
