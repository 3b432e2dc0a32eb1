// SPDX-License-Identifier: Apache-2.0
#include "otfs/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "otfs/qam.hpp"

namespace otfs::harness {

std::uint64_t bit_errors(const BitStream& tx, const BitStream& rx) {
  if (tx.size() != rx.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "bit streams differ in length: " + std::to_string(tx.size()) + " vs " + std::to_string(rx.size()));
  }
  if (tx.size() == 0) throw Error(ErrorCode::EmptyInput, "empty bit streams");
  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < tx.size(); ++i) errors += (tx.bits[i] & 1u) != (rx.bits[i] & 1u);
  return errors;
}

double ber(const BitStream& tx, const BitStream& rx) {
  return static_cast<double>(bit_errors(tx, rx)) / static_cast<double>(tx.size());
}

ErrorReport error_report(std::span<const cplx> a, std::span<const cplx> b, bool keep_per_sample) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "sequences differ in length: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  ErrorReport r;
  if (a.empty()) return r;
  double sum = 0.0;
  double sum_sq = 0.0;
  if (keep_per_sample) r.per_sample.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = std::abs(a[i] - b[i]);
    r.max_abs_error = std::max(r.max_abs_error, e);
    sum += e;
    sum_sq += e * e;
    if (keep_per_sample) r.per_sample[i] = e;
  }
  const auto n = static_cast<double>(a.size());
  r.mean_abs_error = sum / n;
  r.rms_error = std::sqrt(sum_sq / n);
  // Rounding can push these a hair above max for constant errors.
  r.mean_abs_error = std::min(r.mean_abs_error, r.max_abs_error);
  r.rms_error = std::min(r.rms_error, r.max_abs_error);
  return r;
}

BudgetReport budget_report(std::uint64_t total_bits, double latency_s, std::optional<double> power_w) {
  if (!(latency_s > 0.0) || !std::isfinite(latency_s)) {
    throw Error(ErrorCode::NonPositiveLatency, "latency must be positive, got " + std::to_string(latency_s));
  }
  if (total_bits == 0) throw Error(ErrorCode::InvalidArgument, "total bits must be positive");
  if (power_w && !(*power_w > 0.0)) throw Error(ErrorCode::InvalidArgument, "power must be positive");
  BudgetReport r;
  r.total_bits = total_bits;
  r.latency_s = latency_s;
  r.effective_rate_bps = static_cast<double>(total_bits) / latency_s;
  r.power_w = power_w;
  if (power_w) r.efficiency_bps_per_w = r.effective_rate_bps / *power_w;
  return r;
}

double ebn0_to_snr_db(double ebn0_db, ModOrder order) {
  return ebn0_db + 10.0 * std::log10(static_cast<double>(bits_per_symbol(order)));
}

double qpsk_theory_ber(double ebn0_db) {
  const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
  return 0.5 * std::erfc(std::sqrt(ebn0));  // Q(sqrt(2x)) = erfc(sqrt(x)) / 2
}

double qpsk_theory_ebn0_for_ber(double target) {
  if (!(target > 0.0) || !(target < 0.5)) throw Error(ErrorCode::InvalidArgument, "BER must lie in (0, 0.5)");
  double lo = -30.0;
  double hi = 30.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (qpsk_theory_ber(mid) > target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

BitStream frame_bits(ModOrder order, const GridParams& grid, std::uint64_t seed) {
  // Raw engine output only: mt19937_64's sequence is fixed by the standard.
  std::mt19937_64 rng(seed);
  BitStream b;
  b.bits.resize(grid.size() * static_cast<std::size_t>(bits_per_symbol(order)));
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < b.bits.size(); ++i) {
    if (i % 64 == 0) word = rng();
    b.bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
  }
  return b;
}

namespace {

std::uint64_t run_frame(const SweepConfig& cfg, const modem::Window& window, double snr_db,
                        std::uint64_t frame_seed) {
  const BitStream tx = frame_bits(cfg.order, cfg.grid, frame_seed);
  modem::TimeSignal s = modem::transmit(tx, cfg.order, cfg.grid, window, cfg.pipeline);
  if (!cfg.taps.empty()) s = channel::dd_channel(s, cfg.taps);
  // Distinct stream from the payload generator.
  s = channel::awgn(s, snr_db, frame_seed ^ 0x9E3779B97F4A7C15ull);
  return bit_errors(tx, modem::receive(s, cfg.order, cfg.grid, window, cfg.pipeline));
}

}  // namespace

std::vector<SweepPoint> ber_sweep(const SweepConfig& cfg) {
  if (cfg.frames_per_point < 1) throw Error(ErrorCode::InvalidArgument, "frames_per_point must be >= 1");
  const auto window = modem::Window::ones(cfg.grid);
  // Checked up front: nothing may throw inside the parallel region.
  for (const auto& t : cfg.taps) {
    if (t.delay_samples < 0 || static_cast<std::size_t>(t.delay_samples) >= cfg.grid.size()) {
      throw Error(ErrorCode::DelayOutOfRange, "tap delay " + std::to_string(t.delay_samples));
    }
    if (!std::isfinite(t.gain.real()) || !std::isfinite(t.gain.imag())) {
      throw Error(ErrorCode::NonFinite, "tap gain is not finite");
    }
  }
  for (double snr : cfg.snr_db) {
    if (std::isnan(snr) || snr == -std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::InvalidArgument, "snr_db must be finite or +inf");
    }
  }
  (void)bits_per_symbol(cfg.order);
  const std::uint64_t bits_per_frame =
      cfg.grid.size() * static_cast<std::uint64_t>(bits_per_symbol(cfg.order));

  // Frames run in parallel; per-frame transforms stay serial.
  SweepConfig inner = cfg;
  inner.pipeline.exec = spectral::Exec::Serial;

  std::vector<SweepPoint> out;
  for (double snr : cfg.snr_db) {
    const long long frames = static_cast<long long>(cfg.frames_per_point);
    std::uint64_t errors = 0;
    if (cfg.frame_exec == spectral::Exec::Serial) {
      for (long long f = 0; f < frames; ++f) errors += run_frame(inner, window, snr, cfg.seed + f);
    } else {
#pragma omp parallel for schedule(dynamic) reduction(+ : errors)
      for (long long f = 0; f < frames; ++f) errors += run_frame(inner, window, snr, cfg.seed + f);
    }
    SweepPoint p;
    p.snr_db = snr;
    p.bit_count = bits_per_frame * cfg.frames_per_point;
    p.bit_errors = errors;
    p.ber = static_cast<double>(errors) / static_cast<double>(p.bit_count);
    out.push_back(p);
  }
  return out;
}

}  // namespace otfs::harness
