#include "channel.hpp"

#include <random>
#include <stdexcept>

namespace sl39 {

namespace {

char flipped(char c) { return c == kBlack ? kWhite : kBlack; }

void check_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("flip probability outside [0,1]");
}

}  // namespace

std::optional<ChannelPreset> channel_preset(std::string_view name) {
  if (name == "none") return ChannelPreset{"none", 0.0};
  if (name == "wired") return ChannelPreset{"wired", kWiredFlipProb};
  if (name == "wireless") return ChannelPreset{"wireless", kWirelessFlipProb};
  return std::nullopt;
}

std::vector<std::uint8_t> make_flip_mask(std::size_t len, double flip_prob, std::uint64_t seed) {
  check_prob(flip_prob);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(flip_prob);
  std::vector<std::uint8_t> mask(len);
  for (auto& m : mask) m = flip(rng) ? 1 : 0;
  return mask;
}

SymbolStream apply_flip_mask(const SymbolStream& s, const std::vector<std::uint8_t>& mask) {
  if (s.size() != mask.size()) throw std::invalid_argument("mask length mismatch");
  SymbolStream out = s;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (mask[i]) out[i] = flipped(out[i]);
  }
  return out;
}

SymbolStream corrupt(const SymbolStream& s, double flip_prob, std::uint64_t seed) {
  return apply_flip_mask(s, make_flip_mask(s.size(), flip_prob, seed));
}

SymbolStream corrupt_bursty(const SymbolStream& s, double flip_prob, std::uint64_t seed) {
  check_prob(flip_prob);
  std::mt19937_64 rng(seed);
  // Bursts average 1.5 symbols, so events arrive at flip_prob / 1.5 to keep
  // the realized flip fraction near flip_prob.
  std::bernoulli_distribution start(flip_prob / 1.5);
  std::bernoulli_distribution two_long(0.5);
  SymbolStream out = s;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!start(rng)) continue;
    out[i] = flipped(out[i]);
    if (two_long(rng) && i + 1 < out.size()) {
      ++i;
      out[i] = flipped(out[i]);
    }
  }
  return out;
}

double measure_ser(const SymbolStream& a, const SymbolStream& b) {
  if (a.size() != b.size()) throw std::invalid_argument("stream length mismatch");
  if (a.empty()) return 0.0;
  std::size_t differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) ++differing;
  }
  return static_cast<double>(differing) / static_cast<double>(a.size());
}

}  // namespace sl39
