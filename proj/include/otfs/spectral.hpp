// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "otfs/core.hpp"

namespace otfs::spectral {

/// Serial loops are the reference; Parallel distributes independent columns
/// over OpenMP threads. Both produce bit-identical results.
enum class Exec { Serial, Parallel };

enum class Direction { Forward, Inverse };

bool is_power_of_two(std::size_t n) noexcept;

/// Radix-2 orthonormal DFT of one fixed power-of-two length:
///   X[k] = 1/sqrt(n) * sum_l x[l] * exp(-+ j 2 pi k l / n)
/// (minus sign forward, plus sign inverse). Immutable after construction.
class FftPlan {
 public:
  /// Throws UnsupportedLength unless n is a power of two >= 1.
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// In place; x.size() must equal size().
  void execute(std::span<cplx> x, Direction dir) const;

 private:
  std::size_t n_;
  std::vector<cplx> twiddle_;      // exp(-j 2 pi k / n), k < n/2
  std::vector<std::size_t> bitrev_;
  double norm_;
};

std::vector<cplx> fft_n(std::span<const cplx> x, Direction dir);

/// Applies the same transform to every column, column-serial.
void transform_columns(std::vector<std::vector<cplx>>& columns, Direction dir,
                       Exec exec = Exec::Parallel);

/// Flat memory of rows * cols slots. Columns are written at consecutive
/// addresses (column c at c*rows .. c*rows + rows - 1); a transposed read of
/// output column r visits r, r + rows, ..., r + (cols - 1) * rows.
class BramModel {
 public:
  BramModel(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t write_cursor() const noexcept { return write_cursor_; }
  bool full() const noexcept { return write_cursor_ == storage_.size(); }

  /// Throws DimensionMismatch on wrong length or when memory is full.
  void write_column(std::span<const cplx> column);
  /// Transposed read of output column r (length cols()).
  std::vector<cplx> read_transposed(std::size_t r) const;
  /// Address sequence of read_transposed(r).
  std::vector<std::size_t> transposed_addresses(std::size_t r) const;

  const cplx& at(std::size_t address) const { return storage_.at(address); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> storage_;
  std::size_t write_cursor_ = 0;
};

/// M input columns of length N -> N output columns of length M, through a
/// BramModel. Throws DimensionMismatch for ragged input.
std::vector<std::vector<cplx>> bram_transpose(const std::vector<std::vector<cplx>>& columns);

inline constexpr int kDefaultStageFracBits = 12;

/// Round half away from zero to a signed 16-bit word at 2^-frac_bits,
/// saturating. Throws NonFinite, InvalidArgument for frac_bits outside [0, 15].
std::vector<StageWord> quantize_stage(std::span<const cplx> x, int frac_bits = kDefaultStageFracBits);

/// quantize_stage followed by conversion back to double, in place.
void requantize(std::span<cplx> x, int frac_bits);

}  // namespace otfs::spectral
