// SPDX-License-Identifier: Apache-2.0
#include "otfs/prbs.hpp"

#include <string>

namespace otfs {

ModOrder mod_order_from_int(int order) {
  switch (order) {
    case 4: return ModOrder::Qam4;
    case 8: return ModOrder::Qam8;
    case 16: return ModOrder::Qam16;
    case 32: return ModOrder::Qam32;
    default: throw Error(ErrorCode::UnsupportedOrder, "modulation order " + std::to_string(order));
  }
}

int bits_per_symbol(ModOrder order) {
  switch (order) {
    case ModOrder::Qam4: return 2;
    case ModOrder::Qam8: return 3;
    case ModOrder::Qam16: return 4;
    case ModOrder::Qam32: return 5;
  }
  throw Error(ErrorCode::UnsupportedOrder, "modulation order " + std::to_string(static_cast<int>(order)));
}

namespace prbs {

LfsrState::LfsrState(std::uint16_t reg) : reg_(reg) {
  if (reg == 0) throw Error(ErrorCode::AllZeroState, "LFSR register must be nonzero");
}

namespace {

// Stages 16, 14, 13, 11 sit at bits 0, 2, 3, 5.
inline std::uint16_t step(std::uint16_t& reg) noexcept {
  const std::uint16_t fb = (reg ^ (reg >> 2) ^ (reg >> 3) ^ (reg >> 5)) & 1u;
  reg = static_cast<std::uint16_t>((reg >> 1) | (fb << 15));
  return fb;
}

}  // namespace

std::pair<std::uint8_t, LfsrState> lfsr_next(LfsrState state) noexcept {
  std::uint16_t reg = state.value();
  const auto bit = static_cast<std::uint8_t>(step(reg));
  return {bit, LfsrState(reg)};
}

std::pair<std::uint8_t, std::uint16_t> lfsr_next(std::uint16_t reg) {
  if (reg == 0) throw Error(ErrorCode::AllZeroState, "LFSR register must be nonzero");
  const auto bit = static_cast<std::uint8_t>(step(reg));
  return {bit, reg};
}

BitStream generate(std::uint16_t seed, std::size_t count) {
  if (seed == 0) throw Error(ErrorCode::AllZeroState, "LFSR seed must be nonzero");
  BitStream out;
  out.seed = seed;
  out.bits.resize(count);
  std::uint16_t reg = seed;
  for (auto& b : out.bits) b = static_cast<std::uint8_t>(step(reg));
  return out;
}

BitStream generate_bits(ModOrder order, std::uint16_t seed, std::size_t symbols) {
  return generate(seed, symbols * static_cast<std::size_t>(bits_per_symbol(order)));
}

namespace {

void check_autocorr_args(std::size_t len, std::size_t max_lag) {
  if (len == 0) throw Error(ErrorCode::EmptyInput, "autocorrelation of an empty sequence");
  if (max_lag + 1 > len) {
    throw Error(ErrorCode::LagOutOfRange,
                "max_lag " + std::to_string(max_lag) + " needs at least " + std::to_string(max_lag + 1) +
                    " bits, got " + std::to_string(len));
  }
}

// s concatenated with itself, so lag k reads s2[i + k] without a modulo.
std::vector<std::int8_t> doubled_pm1(const std::vector<std::uint8_t>& bits) {
  const std::size_t n = bits.size();
  std::vector<std::int8_t> s2(2 * n);
  for (std::size_t i = 0; i < n; ++i) s2[i] = s2[i + n] = bits[i] ? 1 : -1;
  return s2;
}

std::int64_t lag_sum(const std::int8_t* s, std::size_t n, std::size_t k) noexcept {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += s[i] * s[i + k];
  return acc;
}

}  // namespace

std::vector<std::int64_t> autocorrelation_sums_serial(const std::vector<std::uint8_t>& bits,
                                                      std::size_t max_lag) {
  check_autocorr_args(bits.size(), max_lag);
  const auto s2 = doubled_pm1(bits);
  std::vector<std::int64_t> out(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) out[k] = lag_sum(s2.data(), bits.size(), k);
  return out;
}

std::vector<std::int64_t> autocorrelation_sums(const std::vector<std::uint8_t>& bits, std::size_t max_lag) {
  check_autocorr_args(bits.size(), max_lag);
  const auto s2 = doubled_pm1(bits);
  const std::size_t n = bits.size();
  std::vector<std::int64_t> out(max_lag + 1);
  const long long lags = static_cast<long long>(max_lag) + 1;
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < lags; ++k) out[k] = lag_sum(s2.data(), n, static_cast<std::size_t>(k));
  return out;
}

std::vector<double> autocorrelation(const BitStream& bits, std::size_t max_lag) {
  const auto sums = autocorrelation_sums(bits.bits, max_lag);
  const double len = static_cast<double>(bits.size());
  std::vector<double> rho(sums.size());
  for (std::size_t k = 0; k < sums.size(); ++k) rho[k] = static_cast<double>(sums[k]) / len;
  return rho;
}

}  // namespace prbs
}  // namespace otfs
