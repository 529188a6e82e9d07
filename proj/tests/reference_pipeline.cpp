#include "reference_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "channel.hpp"
#include "code39.hpp"
#include "scanline.hpp"

namespace refpipe {

namespace {

// Bar/space letter notation: uppercase = bar, lowercase = space,
// W/w = wide, N/n = narrow.
constexpr const char* kLetterCodes[10] = {
    "NnNwWnWnN",  // 0
    "WnNwNnNnW",  // 1
    "NnWwNnNnW",  // 2
    "WnWwNnNnN",  // 3
    "NnNwWnNnW",  // 4
    "WnNwWnNnN",  // 5
    "NnWwWnNnN",  // 6
    "NnNwNnWnW",  // 7
    "WnNwNnWnN",  // 8
    "NnWwNnWnN",  // 9
};

}  // namespace

const std::array<std::string, 10>& table() {
  static const std::array<std::string, 10> rows = [] {
    std::array<std::string, 10> out;
    for (int d = 0; d < 10; ++d) {
      std::string bits;
      for (const char* p = kLetterCodes[d]; *p; ++p)
        bits.push_back(*p == 'W' || *p == 'w' ? '1' : '0');
      out[static_cast<std::size_t>(d)] = bits;
    }
    return out;
  }();
  return rows;
}

int match(const std::string& bits9, int& score, bool& ambiguous) {
  int best_digit = 0;
  int best = -1;
  ambiguous = false;
  for (int d = 0; d < 10; ++d) {
    const std::string& row = table()[static_cast<std::size_t>(d)];
    int agree = 0;
    for (int i = 0; i < 9; ++i) {
      if (bits9[static_cast<std::size_t>(i)] == row[static_cast<std::size_t>(i)]) ++agree;
    }
    if (agree > best) {
      best = agree;
      best_digit = d;
      ambiguous = false;
    } else if (agree == best) {
      ambiguous = true;
    }
  }
  score = best;
  return best_digit;
}

std::string correct(const std::string& stream, int mode) {
  if (mode == 0) return stream;
  std::string out = stream;
  const std::size_t n = stream.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && stream[j] == stream[i]) ++j;
    const std::size_t len = j - i;
    const bool interior = i > 0 && j < n;
    if (interior && len <= 2) {
      if (stream[i] == '0') {
        for (std::size_t k = i; k < j; ++k) out[k] = '5';
      } else if (mode == 2) {
        for (std::size_t k = i; k < j; ++k) out[k] = '0';
      }
    }
    i = j;
  }
  return out;
}

Report decode(const std::string& stream, bool strict, int correction_mode) {
  Report rep;
  const std::string fixed = correct(stream, correction_mode);

  // run-length extraction
  std::vector<char> sym;
  std::vector<int> len;
  for (char c : fixed) {
    if (!sym.empty() && sym.back() == c) {
      ++len.back();
    } else {
      sym.push_back(c);
      len.push_back(1);
    }
  }

  // quiet zones
  std::size_t lo = 0;
  std::size_t hi = sym.size();
  if (lo < hi && sym[lo] == '5') ++lo;
  if (lo < hi && sym[hi - 1] == '5') --hi;
  sym.assign(sym.begin() + static_cast<long>(lo), sym.begin() + static_cast<long>(hi));
  len.assign(len.begin() + static_cast<long>(lo), len.begin() + static_cast<long>(hi));

  // boundary repair
  const int count = static_cast<int>(sym.size());
  const int k = 36 - count;
  if (k >= 1 && k <= 3) {
    int narrow = 1 << 30;
    for (int l : len) narrow = std::min(narrow, l);
    std::vector<int> cands;
    bool extra = false;
    int element = 1;
    for (int i2 = 0; i2 < count; ++i2) {
      if (element % 9 == 0 && element < 36 && sym[static_cast<std::size_t>(i2)] == '0' &&
          len[static_cast<std::size_t>(i2)] >= 2 * narrow) {
        if (static_cast<int>(cands.size()) < k) {
          cands.push_back(i2);
          element += 2;
          continue;
        }
        extra = true;
      }
      ++element;
    }
    if (static_cast<int>(cands.size()) == k && !extra && narrow >= 1) {
      int wide = 0;
      for (int i2 = 0; i2 < count; ++i2) {
        if (std::find(cands.begin(), cands.end(), i2) == cands.end())
          wide = std::max(wide, len[static_cast<std::size_t>(i2)]);
      }
      if (wide < narrow) wide = narrow;

      std::vector<char> sym2;
      std::vector<int> len2;
      std::vector<int> open;  // positions of narrow+wide first halves in len2
      for (int i2 = 0; i2 < count; ++i2) {
        if (std::find(cands.begin(), cands.end(), i2) != cands.end()) {
          const int L = len[static_cast<std::size_t>(i2)];
          const int d2n = std::abs(L - 2 * narrow);
          const int dnw = std::abs(L - (narrow + wide));
          const int d2w = std::abs(L - 2 * wide);
          int cls = 2;
          int best = d2w;
          if (dnw < best) {
            best = dnw;
            cls = 1;
          }
          if (d2n < best) cls = 0;
          int first, second;
          bool is_open = false;
          if (cls == 1 && narrow != wide) {
            first = narrow;
            second = L - narrow;
            is_open = true;
          } else {
            first = (L + 1) / 2;
            second = L / 2;
          }
          if (is_open) open.push_back(static_cast<int>(len2.size()));
          sym2.push_back(sym[static_cast<std::size_t>(i2)]);
          len2.push_back(first);
          sym2.push_back(sym[static_cast<std::size_t>(i2)]);
          len2.push_back(second);
        } else {
          sym2.push_back(sym[static_cast<std::size_t>(i2)]);
          len2.push_back(len[static_cast<std::size_t>(i2)]);
        }
      }

      auto classify = [](const std::vector<int>& lengths) {
        int mn = 1 << 30, mx = 0;
        for (int l : lengths) {
          mn = std::min(mn, l);
          mx = std::max(mx, l);
        }
        std::string bits(lengths.size(), '0');
        for (std::size_t i3 = 0; i3 < lengths.size(); ++i3) {
          if (2 * lengths[i3] > mn + mx) bits[i3] = '1';
        }
        return bits;
      };

      if (!open.empty()) {
        int best_mask = 0;
        int best_total = -1;
        int best_ambig = 1 << 30;
        for (int mask = 0; mask < (1 << open.size()); ++mask) {
          std::vector<int> trial = len2;
          for (std::size_t j2 = 0; j2 < open.size(); ++j2) {
            if (mask & (1 << j2))
              std::swap(trial[static_cast<std::size_t>(open[j2])],
                        trial[static_cast<std::size_t>(open[j2]) + 1]);
          }
          const std::string bits = classify(trial);
          int total = 0;
          int nambig = 0;
          for (int g = 0; g < 4; ++g) {
            int s;
            bool a;
            match(bits.substr(static_cast<std::size_t>(g) * 9, 9), s, a);
            total += s;
            if (a) ++nambig;
          }
          if (total > best_total || (total == best_total && nambig < best_ambig)) {
            best_total = total;
            best_ambig = nambig;
            best_mask = mask;
          }
        }
        for (std::size_t j2 = 0; j2 < open.size(); ++j2) {
          if (best_mask & (1 << j2))
            std::swap(len2[static_cast<std::size_t>(open[j2])],
                      len2[static_cast<std::size_t>(open[j2]) + 1]);
        }
      }
      sym = sym2;
      len = len2;
    }
  }

  rep.run_count = static_cast<int>(sym.size());
  if (rep.run_count != 36) {
    rep.failure = 1;
    return rep;
  }

  int mn = 1 << 30, mx = 0;
  for (int l : len) {
    mn = std::min(mn, l);
    mx = std::max(mx, l);
  }
  rep.threshold = (mn + mx) / 2.0;
  rep.bits.assign(36, '0');
  for (int i2 = 0; i2 < 36; ++i2) {
    if (2 * len[static_cast<std::size_t>(i2)] > mn + mx) rep.bits[static_cast<std::size_t>(i2)] = '1';
  }
  rep.has_bits = true;

  rep.has_digits = true;
  bool any_ambiguous = false;
  std::string card;
  for (int g = 0; g < 4; ++g) {
    int s;
    bool a;
    const int d = match(rep.bits.substr(static_cast<std::size_t>(g) * 9, 9), s, a);
    rep.digit[static_cast<std::size_t>(g)] = d;
    rep.score[static_cast<std::size_t>(g)] = s;
    rep.ambiguous[static_cast<std::size_t>(g)] = a;
    if (a) any_ambiguous = true;
    card.push_back(static_cast<char>('0' + d));
  }
  if (strict && any_ambiguous) {
    rep.failure = 2;
    return rep;
  }
  rep.has_card = true;
  rep.card = card;
  return rep;
}

Row experiment_row(double flip_prob, int correction_mode, int trials, std::uint64_t base_seed,
                   bool strict) {
  Row row;
  long successes = 0;
  double residual_sum = 0.0;
  long digit_error_sum = 0;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(base_seed + static_cast<std::uint64_t>(trial));
    std::uniform_int_distribution<int> pick(0, 9999);
    const int card_value = pick(rng);
    sl39::ScanConfig cfg = sl39::ScanConfig::defaults();
    cfg.seed = rng();
    const std::uint64_t channel_seed = rng();
    const std::string clean =
        sl39::synthesize(sl39::encode_card(sl39::CardCode::from_int(card_value)), cfg);
    const std::string noisy = sl39::corrupt(clean, flip_prob, channel_seed);

    const std::string fixed = correct(noisy, correction_mode);
    std::size_t differing = 0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
      if (clean[i] != fixed[i]) ++differing;
    }
    residual_sum += clean.empty() ? 0.0 : static_cast<double>(differing) / clean.size();

    const Report rep = decode(noisy, strict, correction_mode);
    char expected[5];
    std::snprintf(expected, sizeof(expected), "%04d", card_value);
    if (rep.has_card) {
      int wrong = 0;
      for (int i = 0; i < 4; ++i) {
        if (rep.card[static_cast<std::size_t>(i)] != expected[i]) ++wrong;
      }
      digit_error_sum += wrong;
      if (wrong == 0) ++successes;
    } else {
      digit_error_sum += 4;
    }
  }
  row.success_rate = static_cast<double>(successes) / trials;
  row.residual_ser = residual_sum / trials;
  row.digit_errors = static_cast<double>(digit_error_sum) / trials;
  return row;
}

}  // namespace refpipe
