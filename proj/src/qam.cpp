// SPDX-License-Identifier: Apache-2.0
#include "otfs/qam.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace otfs::qam {
namespace {

// Amplitude of the level whose Gray code is `gray` on a `count`-level axis.
int gray_level(std::uint32_t gray, std::uint32_t count) {
  std::uint32_t idx = gray;
  for (std::uint32_t shift = gray >> 1; shift != 0; shift >>= 1) idx ^= shift;
  return 2 * static_cast<int>(idx) - static_cast<int>(count - 1);
}

struct GridPoint {
  int i;
  int q;
};

// I bits are the high part of the label, Q bits the low part.
GridPoint rect_point(std::uint32_t label, int i_bits, int q_bits) {
  const std::uint32_t q_mask = (1u << q_bits) - 1u;
  return {gray_level(label >> q_bits, 1u << i_bits), gray_level(label & q_mask, 1u << q_bits)};
}

// 6x6 cross: start from the 8x4 Gray rectangle and fold the |I| = 7 columns
// onto the empty rows |Q| = 5.
GridPoint cross32_point(std::uint32_t label) {
  GridPoint p = rect_point(label, 3, 2);
  if (std::abs(p.i) == 7) {
    const int si = p.i > 0 ? 1 : -1;
    const int sq = p.q > 0 ? 1 : -1;
    p = {si * (std::abs(p.q) == 3 ? 3 : 1), sq * 5};
  }
  return p;
}

GridPoint grid_point(ModOrder order, std::uint32_t label) {
  switch (order) {
    case ModOrder::Qam4: return rect_point(label, 1, 1);
    case ModOrder::Qam8: return rect_point(label, 2, 1);
    case ModOrder::Qam16: return rect_point(label, 2, 2);
    case ModOrder::Qam32: return cross32_point(label);
  }
  throw Error(ErrorCode::UnsupportedOrder, "modulation order " + std::to_string(static_cast<int>(order)));
}

}  // namespace

Constellation build_constellation(ModOrder order) {
  const int bits = bits_per_symbol(order);
  const std::uint32_t count = 1u << bits;

  std::vector<GridPoint> grid(count);
  double power = 0.0;
  for (std::uint32_t label = 0; label < count; ++label) {
    grid[label] = grid_point(order, label);
    power += grid[label].i * grid[label].i + grid[label].q * grid[label].q;
  }
  power /= count;
  const double scale = 1.0 / std::sqrt(power);

  std::vector<ConstellationPoint> pts(count);
  for (std::uint32_t label = 0; label < count; ++label) {
    pts[label] = {cplx(grid[label].i * scale, grid[label].q * scale), label};
  }
  return Constellation(order, bits, scale, std::move(pts));
}

const Constellation& constellation(ModOrder order) {
  static const std::array<Constellation, 4> cache = {
      build_constellation(ModOrder::Qam4), build_constellation(ModOrder::Qam8),
      build_constellation(ModOrder::Qam16), build_constellation(ModOrder::Qam32)};
  return cache[static_cast<std::size_t>(bits_per_symbol(order) - 2)];
}

std::uint32_t Constellation::nearest(cplx y) const noexcept {
  std::uint32_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& p : points_) {
    const double d = std::norm(y - p.symbol);
    if (d < best_d) {  // strict: ties keep the lower index
      best_d = d;
      best = p.label;
    }
  }
  return best;
}

double Constellation::min_distance() const {
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < points_.size(); ++a)
    for (std::size_t b = a + 1; b < points_.size(); ++b)
      dmin = std::min(dmin, std::abs(points_[a].symbol - points_[b].symbol));
  return dmin;
}

std::vector<cplx> modulate(const BitStream& bits, ModOrder order) {
  const Constellation& c = constellation(order);
  const auto k = static_cast<std::size_t>(c.bits_per_symbol());
  if (bits.size() % k != 0) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(bits.size()) + " bits is not a multiple of " +
                                               std::to_string(k));
  }
  std::vector<cplx> out(bits.size() / k);
  for (std::size_t s = 0; s < out.size(); ++s) {
    std::uint32_t label = 0;
    for (std::size_t b = 0; b < k; ++b) label = (label << 1) | (bits.bits[s * k + b] & 1u);
    out[s] = c.symbol(label);
  }
  return out;
}

BitStream demodulate(std::span<const cplx> symbols, ModOrder order) {
  const Constellation& c = constellation(order);
  const auto k = static_cast<std::size_t>(c.bits_per_symbol());
  BitStream out;
  out.bits.resize(symbols.size() * k);
  for (std::size_t s = 0; s < symbols.size(); ++s) {
    if (!std::isfinite(symbols[s].real()) || !std::isfinite(symbols[s].imag())) {
      throw Error(ErrorCode::NonFinite, "symbol " + std::to_string(s) + " is not finite");
    }
    const std::uint32_t label = c.nearest(symbols[s]);
    for (std::size_t b = 0; b < k; ++b) out.bits[s * k + b] = static_cast<std::uint8_t>((label >> (k - 1 - b)) & 1u);
  }
  return out;
}

std::vector<FixedSample> quantize_symbols(std::span<const cplx> symbols) {
  std::vector<FixedSample> out(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    out[i] = {quantize_q2_10(symbols[i].real()), quantize_q2_10(symbols[i].imag())};
  }
  return out;
}

std::vector<cplx> dequantize_symbols(std::span<const FixedSample> samples) {
  std::vector<cplx> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i].value();
  return out;
}

}  // namespace otfs::qam
