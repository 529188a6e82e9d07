#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace sl39 {

inline constexpr int kElementsPerDigit = 9;
inline constexpr int kDigitsPerCard = 4;
inline constexpr int kElementsPerCard = kElementsPerDigit * kDigitsPerCard;

/// One digit as 9 width flags (1 = wide, 0 = narrow), bar/space interleaved:
/// positions 0,2,4,6,8 are bars, positions 1,3,5,7 are spaces. Exactly three
/// flags are set, two of them on bars and one on a space.
using DigitPattern = std::array<std::uint8_t, kElementsPerDigit>;

/// Four concatenated DigitPatterns. Colors repeat per 9-element group, so the
/// last bar of one digit abuts the first bar of the next.
using Pattern36 = std::array<std::uint8_t, kElementsPerCard>;

/// Four decimal digits, 0000-9999. Leading zeros are significant.
class CardCode {
public:
  CardCode() = default;
  explicit CardCode(const std::array<std::uint8_t, kDigitsPerCard>& digits);
  static CardCode from_int(int value);
  static std::optional<CardCode> parse(std::string_view text);

  int to_int() const;
  std::string to_string() const;
  const std::array<std::uint8_t, kDigitsPerCard>& digits() const { return digits_; }

  bool operator==(const CardCode&) const = default;

private:
  std::array<std::uint8_t, kDigitsPerCard> digits_{};
};

struct MatchResult {
  int digit = 0;           // best-matching digit; smallest digit on ties
  int score = 0;           // elements matched out of 9
  bool ambiguous = false;  // two or more digits tie at the top score
};

/// Width table for digits 0-9.
const std::array<DigitPattern, 10>& digit_patterns();

/// Smallest Hamming distance between any two table rows (all rows carry
/// exactly three wide elements, so distances are even). Checked by test
/// against a brute-force scan of all 45 pairs.
inline constexpr int kMinTableDistance = 2;

/// True if card element `index` (0-based) is a bar. Bars sit at even
/// positions within each 9-element group.
constexpr bool element_is_bar(int index) { return (index % kElementsPerDigit) % 2 == 0; }

DigitPattern encode_digit(int digit);
Pattern36 encode_card(const CardCode& code);

/// Scores `bits` against every table row and reports the best digit.
MatchResult match_digit(std::span<const std::uint8_t, kElementsPerDigit> bits);

struct CardMatch {
  CardCode card;
  std::array<MatchResult, kDigitsPerCard> digits;

  bool all_exact() const;
  bool any_ambiguous() const;
};

/// Splits the 36 flags into four groups and resolves each with match_digit.
CardMatch decode_card(const Pattern36& pattern);

}  // namespace sl39
