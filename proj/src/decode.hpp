#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "code39.hpp"
#include "scanline.hpp"

namespace sl39 {

enum class CorrectionMode { Off, On, Symmetric };

const char* correction_name(CorrectionMode mode);
std::optional<CorrectionMode> correction_from_name(std::string_view name);

struct Run {
  char symbol = kWhite;
  int length = 0;

  bool operator==(const Run&) const = default;
};

using RunArray = std::vector<Run>;

/// Error correction pass over the raw stream. In On mode every maximal black
/// run of length 1 or 2 with white runs on both sides becomes white;
/// Symmetric additionally turns short interior white runs black. Decisions
/// are taken against the run structure of the input, in one left-to-right
/// pass, so a replacement never enables another within the same call.
/// Stream length is preserved.
SymbolStream correct_errors(const SymbolStream& s, CorrectionMode mode = CorrectionMode::On);

/// Standard run-length encoding; concatenating the runs reproduces s.
RunArray run_lengths(const SymbolStream& s);

/// Drops a leading run if white and a trailing run if white.
RunArray trim_quiet_zones(RunArray runs);

/// Repairs the black runs merged where the last bar of one digit abuts the
/// first bar of the next. With 36-k runs for k in {1,2,3}, walks the array
/// counting elements and splits black runs found at the three boundary
/// positions (elements 9, 18, 27) whose length covers two elements. Split
/// widths are recovered from the run population: a merged run close to twice
/// the narrow length or twice the wide length divides evenly; one close to
/// narrow+wide divides into those two widths, with the order chosen by
/// whichever assignment matches the digit table best. Anything else is
/// returned unchanged for downstream run-count validation.
RunArray split_merged_runs(RunArray runs, int expected_elements = kElementsPerCard);

/// Threshold t = (min+max)/2 over the 36 run lengths; element i is wide iff
/// its run is strictly longer than t. Throws unless exactly 36 runs.
std::pair<Pattern36, double> threshold_classify(const RunArray& runs);

enum class DecodeFailure { None, BadRunCount, AmbiguousDigit };

struct DecodeReport {
  std::optional<CardCode> card;  // engaged iff failure == None
  std::array<MatchResult, kDigitsPerCard> digits{};
  bool have_digits = false;
  Pattern36 bits{};
  bool have_bits = false;
  double threshold = 0.0;
  int run_count = 0;  // runs after trimming and boundary repair
  DecodeFailure failure = DecodeFailure::None;
};

struct DecodeOptions {
  bool strict = true;  // ambiguous digits fail instead of taking the smallest
  CorrectionMode correction = CorrectionMode::On;
};

/// Full receiving pipeline: correct_errors, run_lengths, trim_quiet_zones,
/// split_merged_runs, threshold_classify, then per-digit matching. Decode
/// problems surface in the report, never as exceptions.
DecodeReport decode_stream(const SymbolStream& s, const DecodeOptions& opts = {});

/// Multi-line operator rendering: bit array, per-digit scores, final result.
std::string report_text(const DecodeReport& report);

/// Single-line machine record.
std::string report_record(const DecodeReport& report);

}  // namespace sl39
