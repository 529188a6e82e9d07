#include "decode.hpp"

#include <algorithm>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace sl39 {

const char* correction_name(CorrectionMode mode) {
  switch (mode) {
    case CorrectionMode::Off: return "off";
    case CorrectionMode::On: return "on";
    case CorrectionMode::Symmetric: return "symmetric";
  }
  return "?";
}

std::optional<CorrectionMode> correction_from_name(std::string_view name) {
  if (name == "off") return CorrectionMode::Off;
  if (name == "on") return CorrectionMode::On;
  if (name == "symmetric") return CorrectionMode::Symmetric;
  return std::nullopt;
}

namespace {

const char* failure_name(DecodeFailure f) {
  switch (f) {
    case DecodeFailure::None: return "none";
    case DecodeFailure::BadRunCount: return "bad_run_count";
    case DecodeFailure::AmbiguousDigit: return "ambiguous_digit";
  }
  return "?";
}

}  // namespace

SymbolStream correct_errors(const SymbolStream& s, CorrectionMode mode) {
  if (!stream_is_valid(s)) throw std::invalid_argument("stream has symbols other than '0'/'5'");
  if (mode == CorrectionMode::Off) return s;
  const RunArray runs = run_lengths(s);
  SymbolStream out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    char sym = runs[i].symbol;
    // Interior runs always have opposite-color runs on both sides.
    if (i > 0 && i + 1 < runs.size() && runs[i].length <= 2) {
      if (sym == kBlack) {
        sym = kWhite;
      } else if (mode == CorrectionMode::Symmetric) {
        sym = kBlack;
      }
    }
    out.append(static_cast<std::size_t>(runs[i].length), sym);
  }
  return out;
}

RunArray run_lengths(const SymbolStream& s) {
  RunArray runs;
  for (char c : s) {
    if (!runs.empty() && runs.back().symbol == c) {
      ++runs.back().length;
    } else {
      runs.push_back(Run{c, 1});
    }
  }
  return runs;
}

RunArray trim_quiet_zones(RunArray runs) {
  if (!runs.empty() && runs.front().symbol == kWhite) runs.erase(runs.begin());
  if (!runs.empty() && runs.back().symbol == kWhite) runs.pop_back();
  return runs;
}

RunArray split_merged_runs(RunArray runs, int expected_elements) {
  const int count = static_cast<int>(runs.size());
  if (count == expected_elements) return runs;
  const int k = expected_elements - count;
  if (k < 1 || k > 3) return runs;

  // Merged runs span at least two elements, so the global minimum length is
  // a genuine single-element width.
  int narrow = INT_MAX;
  for (const Run& r : runs) narrow = std::min(narrow, r.length);
  if (narrow < 1) return runs;

  // Walk the array counting elements; a black run sitting at a digit
  // boundary and long enough for two elements covers both bars of the pair.
  std::vector<int> candidates;
  bool extra_candidate = false;
  int element = 1;
  for (int i = 0; i < count; ++i) {
    const bool boundary = element % kElementsPerDigit == 0 && element < expected_elements;
    if (boundary && runs[static_cast<std::size_t>(i)].symbol == kBlack &&
        runs[static_cast<std::size_t>(i)].length >= 2 * narrow) {
      if (static_cast<int>(candidates.size()) < k) {
        candidates.push_back(i);
        element += 2;
        continue;
      }
      extra_candidate = true;
    }
    element += 1;
  }
  if (static_cast<int>(candidates.size()) != k || extra_candidate) return runs;

  // Wide estimate from unsplit runs only; every digit keeps a wide space off
  // the boundary, so this is a true single-element width on clean input.
  int wide = 0;
  {
    std::size_t next = 0;
    for (int i = 0; i < count; ++i) {
      if (next < candidates.size() && candidates[next] == i) {
        ++next;
        continue;
      }
      wide = std::max(wide, runs[static_cast<std::size_t>(i)].length);
    }
  }
  if (wide < narrow) wide = narrow;

  // Nearest of 2n / n+w / 2w decides the pair; distance ties go to the wider
  // class. The even classes split ceil/floor; the mixed class keeps the sum
  // and leaves the side of the narrow part to the table lookahead below.
  auto choose = [&](int length, int& first, int& second, bool& order_open) {
    const int d2n = std::abs(length - 2 * narrow);
    const int dnw = std::abs(length - (narrow + wide));
    const int d2w = std::abs(length - 2 * wide);
    int cls = 2;
    int best = d2w;
    if (dnw < best) {
      best = dnw;
      cls = 1;
    }
    if (d2n < best) cls = 0;
    if (cls == 1 && narrow != wide) {
      first = narrow;
      second = length - narrow;
      order_open = true;
      return;
    }
    first = (length + 1) / 2;
    second = length / 2;
    order_open = false;
  };

  RunArray out;
  out.reserve(static_cast<std::size_t>(expected_elements));
  std::vector<std::size_t> open_at;  // index of the first half within `out`
  {
    std::size_t next = 0;
    for (int i = 0; i < count; ++i) {
      const Run& r = runs[static_cast<std::size_t>(i)];
      if (next < candidates.size() && candidates[next] == i) {
        ++next;
        int first = 0, second = 0;
        bool order_open = false;
        choose(r.length, first, second, order_open);
        if (order_open) open_at.push_back(out.size());
        out.push_back(Run{r.symbol, first});
        out.push_back(Run{r.symbol, second});
        continue;
      }
      out.push_back(r);
    }
  }
  if (open_at.empty() || expected_elements != kElementsPerCard) return out;

  // Try both orientations of every narrow+wide boundary and keep the
  // arrangement the digit table matches best; exact table rows are only
  // reachable with the true orientation, so clean scans resolve uniquely.
  int best_mask = 0;
  int best_score = -1;
  int best_ambiguous = INT_MAX;
  for (int mask = 0; mask < (1 << open_at.size()); ++mask) {
    RunArray trial = out;
    for (std::size_t j = 0; j < open_at.size(); ++j) {
      if (mask & (1 << j)) std::swap(trial[open_at[j]].length, trial[open_at[j] + 1].length);
    }
    const auto [bits, t] = threshold_classify(trial);
    (void)t;
    const CardMatch cm = decode_card(bits);
    int total = 0;
    int ambiguous = 0;
    for (const MatchResult& m : cm.digits) {
      total += m.score;
      if (m.ambiguous) ++ambiguous;
    }
    if (total > best_score || (total == best_score && ambiguous < best_ambiguous)) {
      best_score = total;
      best_ambiguous = ambiguous;
      best_mask = mask;
    }
  }
  for (std::size_t j = 0; j < open_at.size(); ++j) {
    if (best_mask & (1 << j)) std::swap(out[open_at[j]].length, out[open_at[j] + 1].length);
  }
  return out;
}

std::pair<Pattern36, double> threshold_classify(const RunArray& runs) {
  if (static_cast<int>(runs.size()) != kElementsPerCard)
    throw std::invalid_argument("threshold_classify expects exactly 36 runs");
  int mn = INT_MAX, mx = 0;
  for (const Run& r : runs) {
    mn = std::min(mn, r.length);
    mx = std::max(mx, r.length);
  }
  Pattern36 bits{};
  for (int i = 0; i < kElementsPerCard; ++i) {
    // strict comparison against (mn+mx)/2 without leaving integers
    bits[static_cast<std::size_t>(i)] =
        2 * runs[static_cast<std::size_t>(i)].length > mn + mx ? 1 : 0;
  }
  return {bits, (mn + mx) / 2.0};
}

DecodeReport decode_stream(const SymbolStream& s, const DecodeOptions& opts) {
  DecodeReport report;
  const SymbolStream corrected = correct_errors(s, opts.correction);
  RunArray runs = split_merged_runs(trim_quiet_zones(run_lengths(corrected)));
  report.run_count = static_cast<int>(runs.size());
  if (report.run_count != kElementsPerCard) {
    report.failure = DecodeFailure::BadRunCount;
    return report;
  }
  const auto [bits, threshold] = threshold_classify(runs);
  report.bits = bits;
  report.have_bits = true;
  report.threshold = threshold;
  const CardMatch cm = decode_card(bits);
  report.digits = cm.digits;
  report.have_digits = true;
  if (opts.strict && cm.any_ambiguous()) {
    report.failure = DecodeFailure::AmbiguousDigit;
    return report;
  }
  report.card = cm.card;
  return report;
}

namespace {

std::string bits_string(const Pattern36& bits) {
  std::string s(kElementsPerCard, '0');
  for (int i = 0; i < kElementsPerCard; ++i) {
    if (bits[static_cast<std::size_t>(i)]) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::string format_threshold(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

}  // namespace

std::string report_text(const DecodeReport& report) {
  std::ostringstream os;
  if (report.have_bits) {
    os << "bits      " << bits_string(report.bits) << "\n";
    os << "threshold " << format_threshold(report.threshold) << "\n";
  }
  os << "runs      " << report.run_count << "\n";
  if (report.have_digits) {
    for (int i = 0; i < kDigitsPerCard; ++i) {
      const MatchResult& m = report.digits[static_cast<std::size_t>(i)];
      os << "digit " << (i + 1) << "   value=" << m.digit << " score=" << m.score << "/"
         << kElementsPerDigit;
      if (m.ambiguous) os << " ambiguous";
      os << "\n";
    }
  }
  if (report.card) {
    os << "result    " << report.card->to_string() << "\n";
  } else {
    os << "result    none (" << failure_name(report.failure) << ")\n";
  }
  return os.str();
}

std::string report_record(const DecodeReport& report) {
  std::ostringstream os;
  os << "reason=" << failure_name(report.failure);
  os << " runs=" << report.run_count;
  os << " threshold=" << (report.have_bits ? format_threshold(report.threshold) : "-");
  os << " bits=" << (report.have_bits ? bits_string(report.bits) : "-");
  os << " digits=";
  if (report.have_digits) {
    for (int i = 0; i < kDigitsPerCard; ++i) {
      const MatchResult& m = report.digits[static_cast<std::size_t>(i)];
      if (i) os << ",";
      os << m.digit << ":" << m.score;
      if (m.ambiguous) os << "!";
    }
  } else {
    os << "-";
  }
  os << " card=" << (report.card ? report.card->to_string() : "-");
  return os.str();
}

}  // namespace sl39
