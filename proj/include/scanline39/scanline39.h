/*
 * scanline39 — infrared barcode card pipeline: Code 39 encoding, scanline
 * synthesis, channel simulation, decoding and authentication.
 *
 * C interface to the shared library. Strings returned through `char**`
 * out-parameters are NUL-terminated, allocated by the library and released
 * with sl39_free(). Functions report sl39_status; on failure
 * sl39_last_error() describes the problem for the calling thread.
 *
 * Symbol streams are ASCII strings over {'0','5'}: '0' is a sampled black
 * (absorbed) byte, '5' a white (reflected) one. On disk or on a pipe a
 * stream is one such line terminated by a newline.
 */

#ifndef SCANLINE39_H
#define SCANLINE39_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sl39_status {
  SL39_OK = 0,
  SL39_NOT_FOUND = 1,  /* successful call, no matching entry */
  SL39_ERR_INVALID_ARGUMENT = -1,
  SL39_ERR_PARSE = -2,
  SL39_ERR_IO = -3,
  SL39_ERR_BUFFER_TOO_SMALL = -4
} sl39_status;

const char* sl39_version(void);

/* Message for the last failing call on this thread; empty if none. */
const char* sl39_last_error(void);

void sl39_free(char* p);

/* ---- Code 39 cards ------------------------------------------------- */

/* `code` is exactly four decimal digits. `pattern_out` receives 36 width
 * flags as characters '0' (narrow) / '1' (wide) plus a terminating NUL. */
sl39_status sl39_encode_card(const char* code, char pattern_out[37]);

typedef struct sl39_match {
  int digit;     /* best-matching digit, smallest on ties */
  int score;     /* elements matched out of 9 */
  int ambiguous; /* nonzero when two or more digits tie */
} sl39_match;

/* `bits9` is 9 characters of '0'/'1'. */
sl39_status sl39_match_digit(const char* bits9, sl39_match* out);

/* `pattern36` is 36 characters of '0'/'1'. `code_out` gets 4 digits + NUL.
 * `digits_out` may be NULL. */
sl39_status sl39_decode_pattern(const char* pattern36, char code_out[5], sl39_match digits_out[4]);

/* ---- Scanline synthesis -------------------------------------------- */

typedef struct sl39_scan_config {
  int narrow_units;   /* samples per narrow element, >= 1 */
  double wide_ratio;  /* wide/narrow width ratio, > 1 */
  int quiet_zone;     /* white samples before and after the card */
  double jitter_pct;  /* per-element width perturbation bound, >= 0 */
  uint64_t seed;      /* jitter RNG seed */
} sl39_scan_config;

void sl39_scan_config_defaults(sl39_scan_config* cfg);

sl39_status sl39_synthesize(const char* pattern36, const sl39_scan_config* cfg,
                            char** stream_out);

/* ---- Channel -------------------------------------------------------- */

/* Flip probability of a named preset: "none", "wired" or "wireless".
 * Returns a negative value for unknown names. */
double sl39_preset_flip_prob(const char* name);

/* Flips each symbol independently with probability flip_prob; nonzero
 * `burst` groups flips into runs of one or two symbols instead. */
sl39_status sl39_corrupt(const char* stream, double flip_prob, uint64_t seed, int burst,
                         char** stream_out);

sl39_status sl39_measure_ser(const char* a, const char* b, double* ser_out);

/* ---- Decoding -------------------------------------------------------- */

typedef enum sl39_correction {
  SL39_CORRECTION_OFF = 0,
  SL39_CORRECTION_ON = 1,       /* short black runs between white become white */
  SL39_CORRECTION_SYMMETRIC = 2 /* additionally short white runs between black */
} sl39_correction;

sl39_status sl39_correct_errors(const char* stream, sl39_correction mode, char** stream_out);

typedef enum sl39_failure {
  SL39_DECODE_NONE = 0,
  SL39_DECODE_BAD_RUN_COUNT = 1,
  SL39_DECODE_AMBIGUOUS_DIGIT = 2
} sl39_failure;

typedef struct sl39_report {
  int has_card;
  char card[5]; /* 4 digits + NUL when has_card */
  int has_digits;
  sl39_match digits[4];
  int has_bits;
  char bits[37]; /* classified width flags + NUL when has_bits */
  double threshold;
  int run_count; /* runs seen after trimming and boundary repair */
  int failure;   /* sl39_failure */
} sl39_report;

/* Runs the full receiving pipeline on a raw stream. With nonzero `strict`
 * an ambiguous digit fails the decode instead of taking the smallest
 * tying digit. */
sl39_status sl39_decode_stream(const char* stream, int strict, sl39_correction mode,
                               sl39_report* report_out);

sl39_status sl39_report_text(const sl39_report* report, char** text_out);
sl39_status sl39_report_record(const sl39_report* report, char** line_out);

/* ---- Authentication -------------------------------------------------- */

typedef struct sl39_authdb sl39_authdb;

/* Database file: UTF-8 text, `CODE,NAME` per line, '#' comments and blank
 * lines allowed. Parse problems return SL39_ERR_PARSE with the offending
 * line number in sl39_last_error(). */
sl39_status sl39_authdb_load(const char* path, sl39_authdb** db_out);
sl39_status sl39_authdb_parse(const char* text, sl39_authdb** db_out);

/* SL39_OK and the user name on an exact code match, SL39_NOT_FOUND
 * otherwise. No partial or nearest matching. */
sl39_status sl39_authdb_lookup(const sl39_authdb* db, const char* code, char* name_out,
                               size_t name_cap);

size_t sl39_authdb_size(const sl39_authdb* db);
void sl39_authdb_close(sl39_authdb* db);

/* Appends `ISO8601,CODE,NAME` to the log file. `when_utc` is a
 * "YYYY-MM-DDTHH:MM:SSZ" timestamp, or NULL for the current time. */
sl39_status sl39_log_append(const char* path, const char* when_utc, const char* code,
                            const char* name);

/* ---- Password gate ---------------------------------------------------- */

typedef struct sl39_gate sl39_gate;

typedef enum sl39_gate_outcome {
  SL39_GATE_GRANTED = 0,
  SL39_GATE_RETRY = 1,
  SL39_GATE_LOCKED_OUT = 2
} sl39_gate_outcome;

sl39_status sl39_gate_new(const char* device_password, const char* factory_code,
                          sl39_gate** gate_out);
sl39_status sl39_gate_attempt(sl39_gate* gate, const char* password, int* outcome_out);
sl39_status sl39_gate_factory_reset(sl39_gate* gate, const char* code, int* ok_out);
int sl39_gate_disabled(const sl39_gate* gate);
int sl39_gate_attempts_remaining(const sl39_gate* gate);

/* Reinstates persisted state: attempts in [0,3], zero exactly when
 * disabled. */
sl39_status sl39_gate_restore(sl39_gate* gate, int disabled, int attempts);
void sl39_gate_close(sl39_gate* gate);

/* ---- Experiments ------------------------------------------------------ */

typedef struct sl39_experiment_spec {
  const double* flip_probs;
  size_t n_probs;
  const int* corrections; /* sl39_correction values; NULL means {on} */
  size_t n_corrections;
  int trials;
  uint64_t base_seed;
  sl39_scan_config scan;
  const char* fixed_code; /* NULL: uniform random card per trial */
  int strict;
  int burst;
} sl39_experiment_spec;

typedef struct sl39_experiment_row {
  double flip_prob;
  int correction;
  int trials;
  double success_rate;
  double residual_ser;
  double digit_errors;
} sl39_experiment_row;

/* Seeded Monte Carlo sweep; one row per (flip_prob, correction). Trial i
 * derives all randomness from base_seed + i, so rows for different modes
 * replay identical corrupted streams. Free `rows_out` with
 * sl39_rows_free(). */
sl39_status sl39_experiment_run(const sl39_experiment_spec* spec, sl39_experiment_row** rows_out,
                                size_t* n_rows_out);
void sl39_rows_free(sl39_experiment_row* rows);

/* CSV schema used by the experiment command. */
const char* sl39_experiment_csv_header(void);
sl39_status sl39_experiment_csv_row(const sl39_experiment_row* row, char** line_out);

#ifdef __cplusplus
}
#endif

#endif /* SCANLINE39_H */
