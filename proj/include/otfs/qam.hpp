// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "otfs/core.hpp"
#include "otfs/prbs.hpp"

namespace otfs::qam {

struct ConstellationPoint {
  cplx symbol;
  std::uint32_t label;  // log2(order) bits, MSB first; equals the LUT index
};

/// Gray-coded LUT on the odd-integer grid scaled to unit average power.
/// Square for 4/16, 4x2 rectangle for 8, 6x6 cross for 32.
class Constellation {
 public:
  ModOrder order() const noexcept { return order_; }
  int bits_per_symbol() const noexcept { return bits_; }
  double scale() const noexcept { return scale_; }
  const std::vector<ConstellationPoint>& points() const noexcept { return points_; }

  const cplx& symbol(std::uint32_t label) const { return points_.at(label).symbol; }

  /// Label of the nearest point; ties go to the lowest LUT index.
  std::uint32_t nearest(cplx y) const noexcept;

  /// Smallest pairwise distance between points.
  double min_distance() const;

 private:
  friend Constellation build_constellation(ModOrder order);
  Constellation(ModOrder order, int bits, double scale, std::vector<ConstellationPoint> pts)
      : order_(order), bits_(bits), scale_(scale), points_(std::move(pts)) {}

  ModOrder order_;
  int bits_;
  double scale_;
  std::vector<ConstellationPoint> points_;
};

/// Throws UnsupportedOrder.
Constellation build_constellation(ModOrder order);

/// Cached immutable constellation for `order`.
const Constellation& constellation(ModOrder order);

/// Throws LengthMismatch when bits are not a whole number of symbols.
std::vector<cplx> modulate(const BitStream& bits, ModOrder order);

/// Throws NonFinite on non-finite input symbols.
BitStream demodulate(std::span<const cplx> symbols, ModOrder order);

std::vector<FixedSample> quantize_symbols(std::span<const cplx> symbols);
std::vector<cplx> dequantize_symbols(std::span<const FixedSample> samples);

}  // namespace otfs::qam
