// SPDX-License-Identifier: Apache-2.0
#include "otfs/modem.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "otfs/qam.hpp"

namespace otfs::modem {

using spectral::Direction;
using spectral::Exec;

namespace {

void require_domain(const Frame& f, Domain want, const char* op) {
  if (f.domain() != want) {
    throw Error(ErrorCode::DomainMismatch,
                std::string(op) + " expects a " +
                    (want == Domain::DelayDoppler ? "delay-Doppler" : "time-frequency") + " frame");
  }
}

void require_grid(const Frame& f, const GridParams& grid) {
  if (!f.matches(grid)) {
    throw Error(ErrorCode::DimensionMismatch, "frame is " + std::to_string(f.rows()) + "x" +
                                                  std::to_string(f.cols()) + ", grid is " +
                                                  std::to_string(grid.n_doppler()) + "x" +
                                                  std::to_string(grid.m_delay()));
  }
}

// exp(sign * j 2 pi k / n) for k < n.
std::vector<cplx> unit_roots(std::size_t n, double sign) {
  std::vector<cplx> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
  return w;
}

// out[a, b] = scale * sum_p sum_q in[p, q] * rows_w[(a p) mod N] * cols_w[(b q) mod M]
Frame double_sum(const Frame& in, Domain out_domain, double row_sign, double col_sign) {
  const std::size_t n = in.rows();
  const std::size_t m = in.cols();
  const auto wr = unit_roots(n, row_sign);
  const auto wc = unit_roots(m, col_sign);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n * m));
  Frame out(out_domain, n, m);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      cplx acc{};
      for (std::size_t p = 0; p < n; ++p) {
        const cplx rw = wr[(a * p) % n];
        for (std::size_t q = 0; q < m; ++q) acc += in(p, q) * rw * wc[(b * q) % m];
      }
      out(a, b) = acc * scale;
    }
  }
  return out;
}

void maybe_requantize(std::vector<std::vector<cplx>>& cols, const PipelineConfig& cfg) {
  if (cfg.arithmetic != Arithmetic::Fixed) return;
  for (auto& c : cols) spectral::requantize(c, cfg.frac_bits);
}

void maybe_requantize(std::span<cplx> x, const PipelineConfig& cfg) {
  if (cfg.arithmetic == Arithmetic::Fixed) spectral::requantize(x, cfg.frac_bits);
}

void require_pow2(const Frame& f) {
  if (!spectral::is_power_of_two(f.rows()) || !spectral::is_power_of_two(f.cols())) {
    throw Error(ErrorCode::UnsupportedLength, "pipeline needs power-of-two N and M");
  }
}

}  // namespace

Frame isfft_direct(const Frame& x) {
  require_domain(x, Domain::DelayDoppler, "isfft");
  return double_sum(x, Domain::TimeFrequency, +1.0, -1.0);
}

Frame sfft_direct(const Frame& y) {
  require_domain(y, Domain::TimeFrequency, "sfft");
  return double_sum(y, Domain::DelayDoppler, -1.0, +1.0);
}

Frame isfft_pipeline(const Frame& x, const PipelineConfig& cfg) {
  require_domain(x, Domain::DelayDoppler, "isfft");
  require_pow2(x);

  // M columns of length N, fed one at a time: IFFT along Doppler.
  auto cols = x.columns();
  spectral::transform_columns(cols, Direction::Inverse, cfg.exec);
  maybe_requantize(cols, cfg);
  if (cfg.ofdm_mode) return Frame::from_columns(Domain::TimeFrequency, cols);

  // N columns of length M: FFT along delay.
  auto rows = spectral::bram_transpose(cols);
  spectral::transform_columns(rows, Direction::Forward, cfg.exec);
  maybe_requantize(rows, cfg);

  return Frame::from_columns(Domain::TimeFrequency, spectral::bram_transpose(rows));
}

Frame sfft(const Frame& y, const PipelineConfig& cfg) {
  require_domain(y, Domain::TimeFrequency, "sfft");
  require_pow2(y);

  if (cfg.ofdm_mode) {
    auto cols = y.columns();
    spectral::transform_columns(cols, Direction::Forward, cfg.exec);
    maybe_requantize(cols, cfg);
    return Frame::from_columns(Domain::DelayDoppler, cols);
  }

  auto rows = spectral::bram_transpose(y.columns());
  spectral::transform_columns(rows, Direction::Inverse, cfg.exec);
  maybe_requantize(rows, cfg);

  auto cols = spectral::bram_transpose(rows);
  spectral::transform_columns(cols, Direction::Forward, cfg.exec);
  maybe_requantize(cols, cfg);
  return Frame::from_columns(Domain::DelayDoppler, cols);
}

Window Window::ones(std::size_t rows, std::size_t cols) {
  return Window{rows, cols, std::vector<cplx>(rows * cols, cplx{1.0, 0.0})};
}

namespace {

void require_window(const Frame& x, const Window& w) {
  if (w.rows != x.rows() || w.cols != x.cols() || w.values.size() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "window shape does not match frame");
  }
}

}  // namespace

Frame apply_window(const Frame& x, const Window& w) {
  require_window(x, w);
  Frame out = x;
  auto d = out.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] *= w.values[i];
  return out;
}

Frame remove_window(const Frame& x, const Window& w) {
  require_window(x, w);
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    if (w.values[i] == cplx{}) {
      throw Error(ErrorCode::WindowSingular, "window weight " + std::to_string(i) + " is zero");
    }
  }
  Frame out = x;
  auto d = out.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] /= w.values[i];
  return out;
}

TimeSignal heisenberg(const Frame& x, const GridParams& grid, Exec exec) {
  require_domain(x, Domain::TimeFrequency, "heisenberg");
  require_grid(x, grid);
  std::vector<std::vector<cplx>> blocks(x.rows());
  for (std::size_t n = 0; n < x.rows(); ++n) {
    const auto row = x.data().subspan(n * x.cols(), x.cols());
    blocks[n].assign(row.begin(), row.end());
  }
  spectral::transform_columns(blocks, Direction::Inverse, exec);

  TimeSignal s;
  s.sample_rate_hz = grid.sample_rate();
  s.samples.reserve(x.size());
  for (const auto& b : blocks) s.samples.insert(s.samples.end(), b.begin(), b.end());
  return s;
}

Frame wigner(const TimeSignal& s, const GridParams& grid, Exec exec) {
  const std::size_t n = grid.n_doppler();
  const std::size_t m = grid.m_delay();
  if (s.size() != n * m) {
    throw Error(ErrorCode::LengthMismatch,
                "signal has " + std::to_string(s.size()) + " samples, frame needs " + std::to_string(n * m));
  }
  std::vector<std::vector<cplx>> blocks(n);
  for (std::size_t b = 0; b < n; ++b) {
    blocks[b].assign(s.samples.begin() + static_cast<std::ptrdiff_t>(b * m),
                     s.samples.begin() + static_cast<std::ptrdiff_t>((b + 1) * m));
  }
  spectral::transform_columns(blocks, Direction::Forward, exec);

  Frame out(Domain::TimeFrequency, n, m);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t k = 0; k < m; ++k) out(b, k) = blocks[b][k];
  return out;
}

Frame symbols_to_frame(const std::vector<cplx>& symbols, const GridParams& grid) {
  const std::size_t n = grid.n_doppler();
  if (symbols.size() != grid.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(symbols.size()) + " symbols for a " +
                                               std::to_string(grid.size()) + "-cell frame");
  }
  Frame f(Domain::DelayDoppler, grid);
  for (std::size_t i = 0; i < symbols.size(); ++i) f(i % n, i / n) = symbols[i];
  return f;
}

std::vector<cplx> frame_to_symbols(const Frame& x) {
  const std::size_t n = x.rows();
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x(i % n, i / n);
  return out;
}

TimeSignal transmit(const BitStream& bits, ModOrder order, const GridParams& grid, const Window& window,
                    const PipelineConfig& cfg) {
  const auto need = grid.size() * static_cast<std::size_t>(bits_per_symbol(order));
  if (bits.size() != need) {
    throw Error(ErrorCode::LengthMismatch,
                "frame carries " + std::to_string(need) + " bits, got " + std::to_string(bits.size()));
  }
  auto symbols = qam::modulate(bits, order);
  if (cfg.arithmetic == Arithmetic::Fixed) symbols = qam::dequantize_symbols(qam::quantize_symbols(symbols));

  Frame tf = isfft_pipeline(symbols_to_frame(symbols, grid), cfg);
  tf = apply_window(tf, window);
  maybe_requantize(tf.data(), cfg);

  TimeSignal s = heisenberg(tf, grid, cfg.exec);
  maybe_requantize(s.samples, cfg);
  return s;
}

std::vector<cplx> receive_symbols(const TimeSignal& s, const GridParams& grid, const Window& window,
                                  const PipelineConfig& cfg) {
  Frame tf = wigner(s, grid, cfg.exec);
  maybe_requantize(tf.data(), cfg);
  tf = remove_window(tf, window);
  maybe_requantize(tf.data(), cfg);
  return frame_to_symbols(sfft(tf, cfg));
}

BitStream receive(const TimeSignal& s, ModOrder order, const GridParams& grid, const Window& window,
                  const PipelineConfig& cfg) {
  return qam::demodulate(receive_symbols(s, grid, window, cfg), order);
}

}  // namespace otfs::modem
