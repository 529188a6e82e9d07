#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "channel.hpp"
#include "decode.hpp"
#include "scanline.hpp"

namespace sl39 {

/// Monte Carlo sweep over channel qualities and correction modes.
///
/// Trials are reproducible: trial i uses mt19937_64(base_seed + i) to draw
/// the card code, then a jitter seed, then a channel seed, in that order.
/// Rows for different correction modes replay the same trials, so mode
/// comparisons see identical corrupted streams.
struct ExperimentSpec {
  std::vector<double> flip_probs;
  std::vector<CorrectionMode> modes = {CorrectionMode::On};
  int trials = 1000;
  std::uint64_t base_seed = 0;
  ScanConfig scan = ScanConfig::defaults();
  std::optional<CardCode> fixed_code;  // random 0000-9999 per trial when unset
  bool strict = true;
  bool burst = false;

  void validate() const;
};

struct ExperimentRow {
  double flip_prob = 0.0;
  CorrectionMode mode = CorrectionMode::On;
  int trials = 0;
  double success_rate = 0.0;  // decoded card equals the card scanned
  double residual_ser = 0.0;  // post-correction stream vs the clean stream
  double digit_errors = 0.0;  // wrong digits per trial; a failed decode counts 4
};

/// One row per (flip_prob, mode), probabilities in spec order first.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

inline constexpr const char* kCsvHeader =
    "flip_prob,correction,trials,success_rate,residual_ser,digit_errors";

std::string csv_row(const ExperimentRow& row);

}  // namespace sl39
