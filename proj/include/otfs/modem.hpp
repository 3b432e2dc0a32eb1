// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "otfs/core.hpp"
#include "otfs/prbs.hpp"
#include "otfs/spectral.hpp"

namespace otfs::modem {

/// N*M samples, block n at [n*M, (n+1)*M).
struct TimeSignal {
  std::vector<cplx> samples;
  double sample_rate_hz = 0.0;

  std::size_t size() const noexcept { return samples.size(); }
  friend bool operator==(const TimeSignal&, const TimeSignal&) = default;
};

/// Transmit window W_tx[n, m]; all-ones unless set.
struct Window {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cplx> values;

  static Window ones(std::size_t rows, std::size_t cols);
  static Window ones(const GridParams& grid) { return ones(grid.n_doppler(), grid.m_delay()); }
  const cplx& operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

enum class Arithmetic { Float, Fixed };

struct PipelineConfig {
  Arithmetic arithmetic = Arithmetic::Float;
  int frac_bits = spectral::kDefaultStageFracBits;
  /// Skips the transpose and the delay-axis transform.
  bool ofdm_mode = false;
  spectral::Exec exec = spectral::Exec::Parallel;
};

// Direct double-sum forms, O(N^2 M^2). Kept as the reference path.
Frame isfft_direct(const Frame& x);
Frame sfft_direct(const Frame& y);

/// Hardware dataflow: per-column inverse transform along Doppler, BRAM
/// transpose, per-column forward transform along delay, transpose back.
/// Fixed mode requantizes to stage words after each transform.
Frame isfft_pipeline(const Frame& x, const PipelineConfig& cfg = {});

/// Inverse of isfft_pipeline (orthonormal): transpose, per-column inverse
/// transform along delay, transpose, per-column forward transform along Doppler.
Frame sfft(const Frame& y, const PipelineConfig& cfg = {});

/// Throws DimensionMismatch.
Frame apply_window(const Frame& x, const Window& w);
/// Elementwise divide; throws WindowSingular on any zero weight.
Frame remove_window(const Frame& x, const Window& w);

/// Rectangular-pulse, critically sampled: block n is the orthonormal
/// M-point inverse DFT of row n.
TimeSignal heisenberg(const Frame& x, const GridParams& grid,
                      spectral::Exec exec = spectral::Exec::Parallel);
/// Per-block orthonormal forward DFT. Throws LengthMismatch.
Frame wigner(const TimeSignal& s, const GridParams& grid,
             spectral::Exec exec = spectral::Exec::Parallel);

/// Symbol i goes to DD cell (i mod N, i div N), delay-first column fill.
Frame symbols_to_frame(const std::vector<cplx>& symbols, const GridParams& grid);
std::vector<cplx> frame_to_symbols(const Frame& x);

/// modulate -> DD frame -> ISFFT -> window -> Heisenberg.
TimeSignal transmit(const BitStream& bits, ModOrder order, const GridParams& grid,
                    const Window& window, const PipelineConfig& cfg = {});

/// Wigner -> un-window -> SFFT -> symbols -> demodulate.
BitStream receive(const TimeSignal& s, ModOrder order, const GridParams& grid,
                  const Window& window, const PipelineConfig& cfg = {});

/// Receiver front half: the equalization-free DD symbol estimates.
std::vector<cplx> receive_symbols(const TimeSignal& s, const GridParams& grid,
                                  const Window& window, const PipelineConfig& cfg = {});

}  // namespace otfs::modem
