// SPDX-License-Identifier: Apache-2.0
#include "otfs/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace otfs::spectral {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

FftPlan::FftPlan(std::size_t n) : n_(n), norm_(1.0 / std::sqrt(static_cast<double>(n))) {
  if (!is_power_of_two(n)) {
    throw Error(ErrorCode::UnsupportedLength, "transform length " + std::to_string(n) + " is not a power of two");
  }
  twiddle_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    twiddle_[k] = std::polar(1.0, angle);
  }
  bitrev_.resize(n);
  int log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < log2n; ++b) r |= ((i >> b) & 1u) << (log2n - 1 - b);
    bitrev_[i] = r;
  }
}

void FftPlan::execute(std::span<cplx> x, Direction dir) const {
  if (x.size() != n_) {
    throw Error(ErrorCode::DimensionMismatch,
                "plan length " + std::to_string(n_) + ", input length " + std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < bitrev_[i]) std::swap(x[i], x[bitrev_[i]]);
  }
  const bool inverse = dir == Direction::Inverse;
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t base = 0; base < n_; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const cplx w = inverse ? std::conj(twiddle_[j * stride]) : twiddle_[j * stride];
        const cplx u = x[base + j];
        const cplx v = x[base + j + half] * w;
        x[base + j] = u + v;
        x[base + j + half] = u - v;
      }
    }
  }
  for (auto& v : x) v *= norm_;
}

std::vector<cplx> fft_n(std::span<const cplx> x, Direction dir) {
  if (x.empty()) throw Error(ErrorCode::UnsupportedLength, "empty transform");
  std::vector<cplx> out(x.begin(), x.end());
  FftPlan(out.size()).execute(out, dir);
  return out;
}

void transform_columns(std::vector<std::vector<cplx>>& columns, Direction dir, Exec exec) {
  if (columns.empty()) return;
  const FftPlan plan(columns.front().size());
  for (const auto& c : columns) {
    if (c.size() != plan.size()) throw Error(ErrorCode::DimensionMismatch, "ragged columns");
  }
  const long long count = static_cast<long long>(columns.size());
  if (exec == Exec::Serial) {
    for (long long c = 0; c < count; ++c) plan.execute(columns[c], dir);
    return;
  }
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < count; ++c) plan.execute(columns[c], dir);
}

BramModel::BramModel(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), storage_(rows * cols) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::InvalidDimension, "empty BRAM");
}

void BramModel::write_column(std::span<const cplx> column) {
  if (column.size() != rows_) {
    throw Error(ErrorCode::DimensionMismatch,
                "column length " + std::to_string(column.size()) + ", expected " + std::to_string(rows_));
  }
  if (full()) throw Error(ErrorCode::DimensionMismatch, "BRAM already holds " + std::to_string(cols_) + " columns");
  for (const cplx& v : column) storage_[write_cursor_++] = v;
}

std::vector<std::size_t> BramModel::transposed_addresses(std::size_t r) const {
  std::vector<std::size_t> addr(cols_);
  for (std::size_t c = 0; c < cols_; ++c) addr[c] = r + c * rows_;
  return addr;
}

std::vector<cplx> BramModel::read_transposed(std::size_t r) const {
  if (r >= rows_) throw Error(ErrorCode::DimensionMismatch, "transposed read past last row");
  std::vector<cplx> out(cols_);
  std::size_t read_cursor = r;
  for (std::size_t c = 0; c < cols_; ++c, read_cursor += rows_) out[c] = storage_[read_cursor];
  return out;
}

std::vector<std::vector<cplx>> bram_transpose(const std::vector<std::vector<cplx>>& columns) {
  if (columns.empty() || columns.front().empty()) throw Error(ErrorCode::DimensionMismatch, "no columns");
  BramModel bram(columns.front().size(), columns.size());
  for (const auto& c : columns) bram.write_column(c);
  std::vector<std::vector<cplx>> out;
  out.reserve(bram.rows());
  for (std::size_t r = 0; r < bram.rows(); ++r) out.push_back(bram.read_transposed(r));
  return out;
}

namespace {

void check_frac_bits(int frac_bits) {
  if (frac_bits < 0 || frac_bits > 15) {
    throw Error(ErrorCode::InvalidArgument, "frac_bits " + std::to_string(frac_bits) + " outside [0, 15]");
  }
}

constexpr std::int32_t kWordMin = -32768;
constexpr std::int32_t kWordMax = 32767;

}  // namespace

std::vector<StageWord> quantize_stage(std::span<const cplx> x, int frac_bits) {
  check_frac_bits(frac_bits);
  std::vector<StageWord> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i].re_raw = static_cast<std::int16_t>(quantize_saturate(x[i].real(), frac_bits, kWordMin, kWordMax));
    out[i].im_raw = static_cast<std::int16_t>(quantize_saturate(x[i].imag(), frac_bits, kWordMin, kWordMax));
    out[i].frac_bits = frac_bits;
  }
  return out;
}

void requantize(std::span<cplx> x, int frac_bits) {
  check_frac_bits(frac_bits);
  const double lsb = std::ldexp(1.0, -frac_bits);
  for (auto& v : x) {
    v = {quantize_saturate(v.real(), frac_bits, kWordMin, kWordMax) * lsb,
         quantize_saturate(v.imag(), frac_bits, kWordMin, kWordMax) * lsb};
  }
}

}  // namespace otfs::spectral
