#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "code39.hpp"
#include "reference_pipeline.hpp"

using namespace sl39;

namespace {

std::string flags(const DigitPattern& p) {
  std::string s;
  for (auto f : p) s.push_back(f ? '1' : '0');
  return s;
}

std::string flags36(const Pattern36& p) {
  std::string s;
  for (auto f : p) s.push_back(f ? '1' : '0');
  return s;
}

int hamming(const std::string& a, const std::string& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) ++d;
  }
  return d;
}

// Brute-force nearest-row scan against the independently derived table.
MatchResult oracle_match(const std::string& bits9) {
  MatchResult m;
  int best_dist = 10;
  for (int d = 0; d < 10; ++d) {
    const int dist = hamming(bits9, refpipe::table()[static_cast<std::size_t>(d)]);
    if (dist < best_dist) {
      best_dist = dist;
      m.digit = d;
      m.ambiguous = false;
    } else if (dist == best_dist) {
      m.ambiguous = true;
    }
  }
  m.score = 9 - best_dist;
  return m;
}

MatchResult run_match(const std::string& bits9) {
  std::array<std::uint8_t, 9> bits{};
  for (int i = 0; i < 9; ++i) bits[static_cast<std::size_t>(i)] = bits9[static_cast<std::size_t>(i)] == '1';
  return match_digit(bits);
}

}  // namespace

TEST_CASE("encode_digit matches the published table") {
  CHECK(flags(encode_digit(0)) == "000110100");
  CHECK(flags(encode_digit(1)) == "100100001");
  CHECK(flags(encode_digit(7)) == "000100101");
  // full cross-check against the letter-notation derivation
  for (int d = 0; d < 10; ++d) CHECK(flags(encode_digit(d)) == refpipe::table()[static_cast<std::size_t>(d)]);
  CHECK_THROWS_AS(encode_digit(10), std::invalid_argument);
  CHECK_THROWS_AS(encode_digit(-1), std::invalid_argument);
}

TEST_CASE("table rows have 3 wide elements, 2 wide bars, 1 wide space") {
  for (int d = 0; d < 10; ++d) {
    const DigitPattern p = encode_digit(d);
    int wides = 0, wide_bars = 0, wide_spaces = 0;
    for (int i = 0; i < 9; ++i) {
      if (!p[static_cast<std::size_t>(i)]) continue;
      ++wides;
      if (i % 2 == 0) ++wide_bars;
      else ++wide_spaces;
    }
    CHECK(wides == 3);
    CHECK(wide_bars == 2);
    CHECK(wide_spaces == 1);
  }
}

TEST_CASE("minimum pairwise table distance is the frozen constant") {
  int min_dist = 9;
  for (int a = 0; a < 10; ++a) {
    for (int b = a + 1; b < 10; ++b) {
      min_dist = std::min(min_dist, hamming(refpipe::table()[static_cast<std::size_t>(a)],
                                            refpipe::table()[static_cast<std::size_t>(b)]));
    }
  }
  CHECK(min_dist == kMinTableDistance);
}

TEST_CASE("encode_card concatenates digit rows") {
  CHECK(flags36(encode_card(CardCode::from_int(0))) ==
        "000110100000110100000110100000110100");
  CHECK(flags36(encode_card(CardCode::from_int(1111))) ==
        "100100001100100001100100001100100001");
  CHECK(flags36(encode_card(*CardCode::parse("0170"))) ==
        "000110100100100001000100101000110100");
}

TEST_CASE("match_digit agrees with brute force on exact and corrupted rows") {
  MatchResult m = run_match("000110100");
  CHECK(m.digit == 0);
  CHECK(m.score == 9);
  CHECK_FALSE(m.ambiguous);

  // element 1 flipped: score drops to 8, tie decided by the oracle
  m = run_match("100110100");
  MatchResult o = oracle_match("100110100");
  CHECK(m.digit == o.digit);
  CHECK(m.score == 8);
  CHECK(m.score == o.score);
  CHECK(m.ambiguous == o.ambiguous);

  m = run_match("000000000");
  o = oracle_match("000000000");
  CHECK(m.digit == o.digit);
  CHECK(m.score == o.score);
  CHECK(m.ambiguous == o.ambiguous);
  CHECK(m.score == 6);  // every row has exactly three wide elements
  CHECK(m.ambiguous);
}

TEST_CASE("match_digit equals brute force over every 1-flip corruption") {
  for (int d = 0; d < 10; ++d) {
    for (int i = 0; i < 9; ++i) {
      std::string bits = refpipe::table()[static_cast<std::size_t>(d)];
      bits[static_cast<std::size_t>(i)] = bits[static_cast<std::size_t>(i)] == '1' ? '0' : '1';
      const MatchResult got = run_match(bits);
      const MatchResult want = oracle_match(bits);
      CAPTURE(d);
      CAPTURE(i);
      CHECK(got.digit == want.digit);
      CHECK(got.score == want.score);
      CHECK(got.ambiguous == want.ambiguous);
      // a single flip leaves the true row at distance 1, so score is 8
      CHECK(got.score == 8);
      if (!got.ambiguous) CHECK(got.digit == d);
    }
  }
}

TEST_CASE("score equals 9 minus the minimum distance for random inputs") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 2000; ++n) {
    std::string bits(9, '0');
    for (auto& c : bits) c = (rng() & 1) ? '1' : '0';
    const MatchResult got = run_match(bits);
    const MatchResult want = oracle_match(bits);
    CHECK(got.score == want.score);
    CHECK(got.digit == want.digit);
    CHECK(got.ambiguous == want.ambiguous);
    CHECK((got.score == 9) == (bits == refpipe::table()[static_cast<std::size_t>(got.digit)]));
  }
}

TEST_CASE("decode_card round-trips every card code") {
  for (int v = 0; v <= 9999; ++v) {
    const CardCode code = CardCode::from_int(v);
    const CardMatch cm = decode_card(encode_card(code));
    REQUIRE(cm.card == code);
    REQUIRE(cm.all_exact());
    REQUIRE_FALSE(cm.any_ambiguous());
  }
}

TEST_CASE("decode_card surfaces a flipped element through the group result") {
  Pattern36 p = encode_card(CardCode::from_int(0));
  p[2 * 9 + 4] ^= 1;  // flip one element in group 3
  const CardMatch cm = decode_card(p);
  CHECK(cm.digits[0].score == 9);
  CHECK(cm.digits[1].score == 9);
  CHECK(cm.digits[3].score == 9);
  CHECK(cm.digits[2].score == 8);
  std::string group;
  for (int i = 0; i < 9; ++i) group.push_back(p[static_cast<std::size_t>(2 * 9 + i)] ? '1' : '0');
  const MatchResult want = oracle_match(group);
  CHECK(cm.digits[2].digit == want.digit);
  CHECK(cm.digits[2].ambiguous == want.ambiguous);
}

TEST_CASE("CardCode parsing and formatting") {
  CHECK(CardCode::parse("0170")->to_int() == 170);
  CHECK(CardCode::from_int(170).to_string() == "0170");
  CHECK_FALSE(CardCode::parse("12345").has_value());
  CHECK_FALSE(CardCode::parse("12a4").has_value());
  CHECK_FALSE(CardCode::parse("123").has_value());
  CHECK_THROWS_AS(CardCode::from_int(10000), std::invalid_argument);
}
