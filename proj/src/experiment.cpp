#include "experiment.hpp"

#include <cstdio>
#include <random>
#include <stdexcept>

namespace sl39 {

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (flip_probs.empty()) throw std::invalid_argument("no flip probabilities given");
  for (double p : flip_probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("flip probability outside [0,1]");
  }
  if (modes.empty()) throw std::invalid_argument("no correction modes given");
  scan.validate();
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<ExperimentRow> rows;
  rows.reserve(spec.flip_probs.size() * spec.modes.size());
  for (double p : spec.flip_probs) {
    for (CorrectionMode mode : spec.modes) {
      ExperimentRow row;
      row.flip_prob = p;
      row.mode = mode;
      row.trials = spec.trials;
      long successes = 0;
      double residual_sum = 0.0;
      long digit_error_sum = 0;
      for (int trial = 0; trial < spec.trials; ++trial) {
        std::mt19937_64 rng(spec.base_seed + static_cast<std::uint64_t>(trial));
        CardCode card;
        if (spec.fixed_code) {
          card = *spec.fixed_code;
        } else {
          std::uniform_int_distribution<int> pick(0, 9999);
          card = CardCode::from_int(pick(rng));
        }
        ScanConfig cfg = spec.scan;
        cfg.seed = rng();
        const std::uint64_t channel_seed = rng();
        const SymbolStream clean = synthesize(encode_card(card), cfg);
        const SymbolStream noisy = spec.burst ? corrupt_bursty(clean, p, channel_seed)
                                              : corrupt(clean, p, channel_seed);
        residual_sum += measure_ser(clean, correct_errors(noisy, mode));
        const DecodeReport report = decode_stream(noisy, DecodeOptions{spec.strict, mode});
        if (report.card) {
          int wrong = 0;
          for (int i = 0; i < kDigitsPerCard; ++i) {
            if (report.card->digits()[static_cast<std::size_t>(i)] !=
                card.digits()[static_cast<std::size_t>(i)])
              ++wrong;
          }
          digit_error_sum += wrong;
          if (wrong == 0) ++successes;
        } else {
          digit_error_sum += kDigitsPerCard;
        }
      }
      row.success_rate = static_cast<double>(successes) / spec.trials;
      row.residual_ser = residual_sum / spec.trials;
      row.digit_errors = static_cast<double>(digit_error_sum) / spec.trials;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string csv_row(const ExperimentRow& row) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%g,%s,%d,%.6f,%.6f,%.6f", row.flip_prob,
                correction_name(row.mode), row.trials, row.success_rate, row.residual_ser,
                row.digit_errors);
  return buf;
}

}  // namespace sl39
