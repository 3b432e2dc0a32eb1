// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "otfs/channel.hpp"
#include "otfs/modem.hpp"

namespace otfs::harness {

struct ErrorReport {
  double max_abs_error = 0.0;
  double mean_abs_error = 0.0;
  double rms_error = 0.0;
  std::vector<double> per_sample;
};

struct BudgetReport {
  std::uint64_t total_bits = 0;
  double latency_s = 0.0;
  double effective_rate_bps = 0.0;
  std::optional<double> power_w;
  std::optional<double> efficiency_bps_per_w;
};

/// Hamming distance / length. Throws LengthMismatch, EmptyInput.
double ber(const BitStream& tx, const BitStream& rx);
std::uint64_t bit_errors(const BitStream& tx, const BitStream& rx);

/// Throws LengthMismatch.
ErrorReport error_report(std::span<const cplx> a, std::span<const cplx> b, bool keep_per_sample = false);

/// Throws NonPositiveLatency (also for non-positive bit counts or power).
BudgetReport budget_report(std::uint64_t total_bits, double latency_s,
                           std::optional<double> power_w = std::nullopt);

struct SweepConfig {
  ModOrder order = ModOrder::Qam4;
  GridParams grid = make_grid(kDefaultN, kDefaultM);
  std::vector<double> snr_db;  // per-sample SNR, +inf allowed
  std::vector<channel::ChannelTap> taps;
  std::size_t frames_per_point = 1;
  std::uint64_t seed = 1;
  modem::PipelineConfig pipeline{};
  spectral::Exec frame_exec = spectral::Exec::Parallel;
};

struct SweepPoint {
  double snr_db = 0.0;
  double ber = 0.0;
  std::uint64_t bit_count = 0;
  std::uint64_t bit_errors = 0;
};

/// Frame f at every point uses seed + f for its payload and noise, so the
/// result is independent of thread count.
std::vector<SweepPoint> ber_sweep(const SweepConfig& cfg);

/// Es/N0 in dB for a given Eb/N0 and order.
double ebn0_to_snr_db(double ebn0_db, ModOrder order);

/// Gaussian-tail BER for Gray QPSK: Q(sqrt(2 Eb/N0)).
double qpsk_theory_ber(double ebn0_db);

/// Eb/N0 at which qpsk_theory_ber equals `ber` (bisection).
double qpsk_theory_ebn0_for_ber(double ber);

/// Payload bits for frame `index` of a sweep seeded with `seed`.
BitStream frame_bits(ModOrder order, const GridParams& grid, std::uint64_t seed);

}  // namespace otfs::harness
