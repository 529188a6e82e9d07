#include "scanline.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace sl39 {

bool stream_is_valid(const SymbolStream& s) {
  for (char c : s) {
    if (c != kBlack && c != kWhite) return false;
  }
  return true;
}

void ScanConfig::validate() const {
  if (narrow_units < 1) throw std::invalid_argument("narrow_units must be >= 1");
  if (!(wide_ratio > 1.0)) throw std::invalid_argument("wide_ratio must be > 1");
  if (quiet_zone < 0) throw std::invalid_argument("quiet_zone must be >= 0");
  if (jitter_pct < 0.0) throw std::invalid_argument("jitter_pct must be >= 0");
  // A jittered narrow run must stay below a jittered wide run.
  const double n = static_cast<double>(narrow_units);
  if (!(n * (1.0 + jitter_pct) < n * wide_ratio * (1.0 - jitter_pct)))
    throw std::invalid_argument("jitter_pct too large for wide_ratio");
}

int element_width(const ScanConfig& cfg, bool wide, double jitter_factor) {
  const double w =
      static_cast<double>(cfg.narrow_units) * (wide ? cfg.wide_ratio : 1.0) * jitter_factor;
  const int rounded = static_cast<int>(std::floor(w + 0.5));
  return rounded < 1 ? 1 : rounded;
}

SymbolStream synthesize(const Pattern36& pattern, const ScanConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> jitter(1.0 - cfg.jitter_pct, 1.0 + cfg.jitter_pct);

  SymbolStream out;
  out.append(static_cast<std::size_t>(cfg.quiet_zone), kWhite);
  for (int i = 0; i < kElementsPerCard; ++i) {
    const double factor = cfg.jitter_pct > 0.0 ? jitter(rng) : 1.0;
    const int width = element_width(cfg, pattern[static_cast<std::size_t>(i)] != 0, factor);
    out.append(static_cast<std::size_t>(width), element_is_bar(i) ? kBlack : kWhite);
  }
  out.append(static_cast<std::size_t>(cfg.quiet_zone), kWhite);
  return out;
}

std::vector<int> expected_run_lengths(const Pattern36& pattern, const ScanConfig& cfg) {
  cfg.validate();
  std::vector<int> runs;
  bool prev_bar = false;
  for (int i = 0; i < kElementsPerCard; ++i) {
    const bool bar = element_is_bar(i);
    const int width = element_width(cfg, pattern[static_cast<std::size_t>(i)] != 0);
    if (!runs.empty() && bar == prev_bar) {
      runs.back() += width;
    } else {
      runs.push_back(width);
    }
    prev_bar = bar;
  }
  return runs;
}

}  // namespace sl39
