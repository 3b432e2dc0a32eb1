// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "otfs/error.hpp"

namespace otfs {

using cplx = std::complex<double>;

/// Critically-sampled frame geometry. The resolutions are derived on demand
/// so they can never drift from (N, M, delta_f, T).
class GridParams {
 public:
  std::size_t n_doppler() const noexcept { return n_; }
  std::size_t m_delay() const noexcept { return m_; }
  double subcarrier_spacing() const noexcept { return delta_f_; }
  double symbol_duration() const noexcept { return t_; }
  double doppler_resolution() const noexcept { return 1.0 / (static_cast<double>(n_) * t_); }
  double delay_resolution() const noexcept { return 1.0 / (static_cast<double>(m_) * delta_f_); }
  double sample_rate() const noexcept { return static_cast<double>(m_) * delta_f_; }
  std::size_t size() const noexcept { return n_ * m_; }

  friend bool operator==(const GridParams&, const GridParams&) = default;

 private:
  friend GridParams make_grid(long long n, long long m, double delta_f, double t);
  GridParams(std::size_t n, std::size_t m, double delta_f, double t)
      : n_(n), m_(m), delta_f_(delta_f), t_(t) {}

  std::size_t n_;
  std::size_t m_;
  double delta_f_;
  double t_;
};

inline constexpr std::size_t kDefaultN = 64;
inline constexpr std::size_t kDefaultM = 64;
inline constexpr double kDefaultSubcarrierSpacing = 15000.0;

/// Throws InvalidDimension for n or m < 1 and NonCriticalSampling unless
/// |t * delta_f - 1| < 1e-12.
GridParams make_grid(long long n, long long m, double delta_f, double t);

/// N x M grid with the default 15 kHz spacing and T = 1 / delta_f.
GridParams make_grid(long long n, long long m);

enum class Domain { DelayDoppler, TimeFrequency };

/// N x M complex frame, row-major. Rows index Doppler (p) or time (n),
/// columns index delay (q) or frequency (m).
class Frame {
 public:
  Frame(Domain domain, std::size_t rows, std::size_t cols);
  Frame(Domain domain, std::size_t rows, std::size_t cols, std::vector<cplx> data);
  Frame(Domain domain, const GridParams& grid) : Frame(domain, grid.n_doppler(), grid.m_delay()) {}

  Domain domain() const noexcept { return domain_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  /// Column c as a contiguous copy (length rows()).
  std::vector<cplx> column(std::size_t c) const;
  /// All columns in order, i.e. the column-serial feeding order.
  std::vector<std::vector<cplx>> columns() const;
  /// Rebuilds a frame from cols() columns of length rows().
  static Frame from_columns(Domain domain, const std::vector<std::vector<cplx>>& cols);

  bool matches(const GridParams& grid) const noexcept {
    return rows_ == grid.n_doppler() && cols_ == grid.m_delay();
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  Domain domain_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

// ---------------------------------------------------------------------------
// Fixed point
// ---------------------------------------------------------------------------

inline constexpr int kQ210FracBits = 10;
inline constexpr std::int32_t kQ210Min = -2048;
inline constexpr std::int32_t kQ210Max = 2047;

/// 12-bit two's complement Q2.10 complex sample.
struct FixedSample {
  std::int16_t re_raw = 0;
  std::int16_t im_raw = 0;

  cplx value() const noexcept;
  friend bool operator==(const FixedSample&, const FixedSample&) = default;
};

/// 16-bit stage-boundary word, value = raw / 2^frac_bits.
struct StageWord {
  std::int16_t re_raw = 0;
  std::int16_t im_raw = 0;
  int frac_bits = 12;

  cplx value() const noexcept;
  friend bool operator==(const StageWord&, const StageWord&) = default;
};

/// Round half away from zero to `frac_bits` fractional bits and saturate to
/// [lo, hi]. Throws NonFinite on NaN or infinity.
std::int32_t quantize_saturate(double v, int frac_bits, std::int32_t lo, std::int32_t hi);

std::int16_t quantize_q2_10(double v);
double dequantize_q2_10(std::int32_t raw) noexcept;

}  // namespace otfs
