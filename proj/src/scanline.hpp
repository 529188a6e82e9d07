#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "code39.hpp"

namespace sl39 {

/// Raw scanner output alphabet. '0' is a sampled byte of all zeros (black,
/// absorbed); '5' is a byte of all ones (white, reflected). A stream
/// serializes as one ASCII line of these characters plus a newline.
inline constexpr char kBlack = '0';
inline constexpr char kWhite = '5';

using SymbolStream = std::string;

bool stream_is_valid(const SymbolStream& s);

struct ScanConfig {
  int narrow_units = 4;      // samples per narrow element
  double wide_ratio = 2.5;   // wide/narrow width ratio
  int quiet_zone = 12;       // white samples before and after the card
  double jitter_pct = 0.0;   // per-element width perturbation bound
  std::uint64_t seed = 0;    // jitter RNG seed

  static ScanConfig defaults() { return ScanConfig{}; }

  /// Throws std::invalid_argument unless narrow_units >= 1, wide_ratio > 1,
  /// quiet_zone >= 0 and jitter keeps every jittered narrow run strictly
  /// below every jittered wide run.
  void validate() const;
};

/// Samples per element: round-half-up of narrow_units * (wide_ratio if wide)
/// * jitter factor, floored at 1.
int element_width(const ScanConfig& cfg, bool wide, double jitter_factor = 1.0);

/// Emits quiet_zone white symbols, one run per element (black for bars,
/// white for spaces), and quiet_zone trailing white symbols. Jitter factors
/// are drawn per element from mt19937_64(cfg.seed), uniform in
/// [1-jitter_pct, 1+jitter_pct].
SymbolStream synthesize(const Pattern36& pattern, const ScanConfig& cfg);

/// Run lengths synthesize would emit with zero jitter, quiet zones excluded.
/// Adjacent same-color elements (the bar pairs at digit boundaries) merge
/// into a single run, so a card yields 33 entries, not 36.
std::vector<int> expected_run_lengths(const Pattern36& pattern, const ScanConfig& cfg);

}  // namespace sl39
