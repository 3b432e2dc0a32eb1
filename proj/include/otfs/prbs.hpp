// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "otfs/error.hpp"

namespace otfs {

/// Modulation orders supported by the LUT modulator.
enum class ModOrder : int { Qam4 = 4, Qam8 = 8, Qam16 = 16, Qam32 = 32 };

/// Throws UnsupportedOrder for anything other than 4, 8, 16, 32.
ModOrder mod_order_from_int(int order);
/// log2(order); throws UnsupportedOrder for out-of-range enum values.
int bits_per_symbol(ModOrder order);

/// Symbols per frame in the hardware configuration (64 x 64).
inline constexpr std::size_t kSymbolsPerFrame = 4096;

struct BitStream {
  std::vector<std::uint8_t> bits;   // each element 0 or 1
  std::optional<std::uint16_t> seed;  // set when produced by the LFSR

  std::size_t size() const noexcept { return bits.size(); }
  friend bool operator==(const BitStream&, const BitStream&) = default;
};

namespace prbs {

/// 16-stage Fibonacci LFSR for f(x) = 1 + x^11 + x^13 + x^14 + x^16.
///
/// Stage k (1..16) lives in bit (16 - k) of the register word, so stage 16 is
/// the LSB at the output end. Each step XORs stages {16, 14, 13, 11} (bits
/// 0, 2, 3, 5), emits that bit, shifts right and feeds it into stage 1.
class LfsrState {
 public:
  /// Throws AllZeroState for 0.
  explicit LfsrState(std::uint16_t reg);

  std::uint16_t value() const noexcept { return reg_; }
  friend bool operator==(const LfsrState&, const LfsrState&) = default;

 private:
  std::uint16_t reg_;
};

inline constexpr std::uint16_t kDefaultSeed = 0xFFFF;
inline constexpr std::size_t kPeriod = 65535;

std::pair<std::uint8_t, LfsrState> lfsr_next(LfsrState state) noexcept;

/// Raw-register form. Throws AllZeroState for 0.
std::pair<std::uint8_t, std::uint16_t> lfsr_next(std::uint16_t reg);

/// `count` consecutive output bits starting from `seed`.
BitStream generate(std::uint16_t seed, std::size_t count);

/// Exactly symbols * log2(order) bits; symbols defaults to one 64 x 64 frame.
BitStream generate_bits(ModOrder order, std::uint16_t seed, std::size_t symbols = kSymbolsPerFrame);

/// Circular +-1 autocorrelation sums C(k) = sum_i s[i] s[(i+k) mod L],
/// k = 0..max_lag. Integer valued, so the m-sequence property is exact.
std::vector<std::int64_t> autocorrelation_sums(const std::vector<std::uint8_t>& bits,
                                               std::size_t max_lag);
std::vector<std::int64_t> autocorrelation_sums_serial(const std::vector<std::uint8_t>& bits,
                                                      std::size_t max_lag);

/// rho(k) = C(k) / L. Throws EmptyInput or LagOutOfRange.
std::vector<double> autocorrelation(const BitStream& bits, std::size_t max_lag);

}  // namespace prbs
}  // namespace otfs
