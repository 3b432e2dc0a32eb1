// SPDX-License-Identifier: Apache-2.0
#include "otfs/core.hpp"

#include <cmath>
#include <string>

namespace otfs {

GridParams make_grid(long long n, long long m, double delta_f, double t) {
  if (n < 1 || m < 1) {
    throw Error(ErrorCode::InvalidDimension,
                "grid needs n >= 1 and m >= 1, got " + std::to_string(n) + "x" + std::to_string(m));
  }
  if (!std::isfinite(delta_f) || !std::isfinite(t) || delta_f <= 0.0 || t <= 0.0) {
    throw Error(ErrorCode::NonCriticalSampling, "delta_f and T must be positive and finite");
  }
  if (std::abs(t * delta_f - 1.0) >= 1e-12) {
    throw Error(ErrorCode::NonCriticalSampling,
                "T * delta_f = " + std::to_string(t * delta_f) + ", expected 1");
  }
  return GridParams(static_cast<std::size_t>(n), static_cast<std::size_t>(m), delta_f, t);
}

GridParams make_grid(long long n, long long m) {
  return make_grid(n, m, kDefaultSubcarrierSpacing, 1.0 / kDefaultSubcarrierSpacing);
}

Frame::Frame(Domain domain, std::size_t rows, std::size_t cols)
    : domain_(domain), rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::InvalidDimension, "empty frame");
}

Frame::Frame(Domain domain, std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : domain_(domain), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::InvalidDimension, "empty frame");
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "frame data has " + std::to_string(data_.size()) +
                                                  " elements, expected " + std::to_string(rows * cols));
  }
}

std::vector<cplx> Frame::column(std::size_t c) const {
  std::vector<cplx> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = data_[r * cols_ + c];
  return out;
}

std::vector<std::vector<cplx>> Frame::columns() const {
  std::vector<std::vector<cplx>> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

Frame Frame::from_columns(Domain domain, const std::vector<std::vector<cplx>>& cols) {
  if (cols.empty() || cols.front().empty()) throw Error(ErrorCode::InvalidDimension, "no columns");
  const std::size_t rows = cols.front().size();
  Frame f(domain, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error(ErrorCode::DimensionMismatch, "ragged columns");
    for (std::size_t r = 0; r < rows; ++r) f(r, c) = cols[c][r];
  }
  return f;
}

cplx FixedSample::value() const noexcept {
  return {dequantize_q2_10(re_raw), dequantize_q2_10(im_raw)};
}

cplx StageWord::value() const noexcept {
  const double lsb = std::ldexp(1.0, -frac_bits);
  return {re_raw * lsb, im_raw * lsb};
}

std::int32_t quantize_saturate(double v, int frac_bits, std::int32_t lo, std::int32_t hi) {
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "cannot quantize a non-finite value");
  // std::round is half away from zero; clamp in double to avoid overflow.
  const double r = std::round(std::ldexp(v, frac_bits));
  if (r <= static_cast<double>(lo)) return lo;
  if (r >= static_cast<double>(hi)) return hi;
  return static_cast<std::int32_t>(r);
}

std::int16_t quantize_q2_10(double v) {
  return static_cast<std::int16_t>(quantize_saturate(v, kQ210FracBits, kQ210Min, kQ210Max));
}

double dequantize_q2_10(std::int32_t raw) noexcept { return std::ldexp(static_cast<double>(raw), -kQ210FracBits); }

}  // namespace otfs
