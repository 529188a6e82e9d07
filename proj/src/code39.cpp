#include "code39.hpp"

#include <stdexcept>

namespace sl39 {

namespace {

constexpr std::array<DigitPattern, 10> kDigitTable = {{
    {0, 0, 0, 1, 1, 0, 1, 0, 0},  // 0
    {1, 0, 0, 1, 0, 0, 0, 0, 1},  // 1
    {0, 0, 1, 1, 0, 0, 0, 0, 1},  // 2
    {1, 0, 1, 1, 0, 0, 0, 0, 0},  // 3
    {0, 0, 0, 1, 1, 0, 0, 0, 1},  // 4
    {1, 0, 0, 1, 1, 0, 0, 0, 0},  // 5
    {0, 0, 1, 1, 1, 0, 0, 0, 0},  // 6
    {0, 0, 0, 1, 0, 0, 1, 0, 1},  // 7
    {1, 0, 0, 1, 0, 0, 1, 0, 0},  // 8
    {0, 0, 1, 1, 0, 0, 1, 0, 0},  // 9
}};

}  // namespace

CardCode::CardCode(const std::array<std::uint8_t, kDigitsPerCard>& digits) : digits_(digits) {
  for (auto d : digits_) {
    if (d > 9) throw std::invalid_argument("card digit out of range");
  }
}

CardCode CardCode::from_int(int value) {
  if (value < 0 || value > 9999) throw std::invalid_argument("card code out of range");
  std::array<std::uint8_t, kDigitsPerCard> ds{};
  for (int i = kDigitsPerCard - 1; i >= 0; --i) {
    ds[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value % 10);
    value /= 10;
  }
  return CardCode(ds);
}

std::optional<CardCode> CardCode::parse(std::string_view text) {
  if (text.size() != kDigitsPerCard) return std::nullopt;
  std::array<std::uint8_t, kDigitsPerCard> ds{};
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
    ds[i] = static_cast<std::uint8_t>(text[i] - '0');
  }
  return CardCode(ds);
}

int CardCode::to_int() const {
  int v = 0;
  for (auto d : digits_) v = v * 10 + d;
  return v;
}

std::string CardCode::to_string() const {
  std::string s(kDigitsPerCard, '0');
  for (std::size_t i = 0; i < digits_.size(); ++i) s[i] = static_cast<char>('0' + digits_[i]);
  return s;
}

const std::array<DigitPattern, 10>& digit_patterns() { return kDigitTable; }

DigitPattern encode_digit(int digit) {
  if (digit < 0 || digit > 9) throw std::invalid_argument("digit out of range");
  return kDigitTable[static_cast<std::size_t>(digit)];
}

Pattern36 encode_card(const CardCode& code) {
  Pattern36 out{};
  std::size_t at = 0;
  for (auto d : code.digits()) {
    const DigitPattern& p = kDigitTable[d];
    for (auto flag : p) out[at++] = flag;
  }
  return out;
}

MatchResult match_digit(std::span<const std::uint8_t, kElementsPerDigit> bits) {
  MatchResult best;
  best.score = -1;
  for (int d = 0; d <= 9; ++d) {
    const DigitPattern& row = kDigitTable[static_cast<std::size_t>(d)];
    int matched = 0;
    for (int i = 0; i < kElementsPerDigit; ++i) {
      if ((bits[static_cast<std::size_t>(i)] != 0) == (row[static_cast<std::size_t>(i)] != 0)) ++matched;
    }
    if (matched > best.score) {
      best.digit = d;
      best.score = matched;
      best.ambiguous = false;
    } else if (matched == best.score) {
      best.ambiguous = true;  // keep the smaller digit
    }
  }
  return best;
}

bool CardMatch::all_exact() const {
  for (const auto& m : digits) {
    if (m.score != kElementsPerDigit) return false;
  }
  return true;
}

bool CardMatch::any_ambiguous() const {
  for (const auto& m : digits) {
    if (m.ambiguous) return true;
  }
  return false;
}

CardMatch decode_card(const Pattern36& pattern) {
  CardMatch out{};
  std::array<std::uint8_t, kDigitsPerCard> digits{};
  for (int g = 0; g < kDigitsPerCard; ++g) {
    std::span<const std::uint8_t, kElementsPerDigit> group(
        pattern.data() + g * kElementsPerDigit, kElementsPerDigit);
    out.digits[static_cast<std::size_t>(g)] = match_digit(group);
    digits[static_cast<std::size_t>(g)] =
        static_cast<std::uint8_t>(out.digits[static_cast<std::size_t>(g)].digit);
  }
  out.card = CardCode(digits);
  return out;
}

}  // namespace sl39
