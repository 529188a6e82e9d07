#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "scanline.hpp"

namespace sl39 {

/// Measured symbol error rates of the serial and radio links, used as
/// channel presets.
inline constexpr double kWiredFlipProb = 0.005;
inline constexpr double kWirelessFlipProb = 0.05;

struct ChannelPreset {
  std::string_view name;
  double flip_prob;
};

/// "none", "wired" or "wireless"; std::nullopt for anything else.
std::optional<ChannelPreset> channel_preset(std::string_view name);

/// Per-symbol flip decisions for a stream of length `len`, drawn i.i.d. with
/// probability flip_prob from mt19937_64(seed). Exposed so a mask can be
/// replayed: applying the same mask twice restores the original stream.
std::vector<std::uint8_t> make_flip_mask(std::size_t len, double flip_prob, std::uint64_t seed);

SymbolStream apply_flip_mask(const SymbolStream& s, const std::vector<std::uint8_t>& mask);

/// Binary symmetric channel: each symbol flipped ('0' <-> '5')
/// independently with probability flip_prob.
SymbolStream corrupt(const SymbolStream& s, double flip_prob, std::uint64_t seed);

/// Burst variant: flips arrive as runs of one or two adjacent symbols while
/// the overall flip fraction stays near flip_prob.
SymbolStream corrupt_bursty(const SymbolStream& s, double flip_prob, std::uint64_t seed);

/// Fraction of positions where the streams differ. Throws on length
/// mismatch; two empty streams measure 0.
double measure_ser(const SymbolStream& a, const SymbolStream& b);

}  // namespace sl39
