// Straight-line reference implementation of the receiving pipeline, kept
// independent of the library sources so the two can check each other. The
// digit table here is derived from bar/space letter notation rather than
// width flags, and every stage is re-coded inline.

#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace refpipe {

// Width flags for digits 0-9 as 9-character '0'/'1' strings.
const std::array<std::string, 10>& table();

// digit and score of the best table match; `ambiguous` set on top-score ties.
int match(const std::string& bits9, int& score, bool& ambiguous);

// mode: 0 off, 1 on (short interior black runs -> white), 2 symmetric.
std::string correct(const std::string& stream, int mode);

struct Report {
  int failure = 0;  // 0 none, 1 bad_run_count, 2 ambiguous_digit
  bool has_card = false;
  std::string card;
  bool has_digits = false;
  std::array<int, 4> digit{};
  std::array<int, 4> score{};
  std::array<bool, 4> ambiguous{};
  bool has_bits = false;
  std::string bits;
  double threshold = 0.0;
  int run_count = 0;
};

Report decode(const std::string& stream, bool strict, int correction_mode);

struct Row {
  double success_rate = 0.0;
  double residual_ser = 0.0;
  double digit_errors = 0.0;
};

// Replays the library's documented trial derivation (card, jitter seed and
// channel seed all from mt19937_64(base_seed + trial)) but decodes and
// measures with the reference code above.
Row experiment_row(double flip_prob, int correction_mode, int trials, std::uint64_t base_seed,
                   bool strict);

}  // namespace refpipe
