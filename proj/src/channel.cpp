// SPDX-License-Identifier: Apache-2.0
#include "otfs/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace otfs::channel {

modem::TimeSignal awgn(const modem::TimeSignal& s, double snr_db, std::uint64_t seed) {
  if (s.samples.empty()) throw Error(ErrorCode::EmptySignal, "awgn on an empty signal");
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::InvalidArgument, "snr_db must be finite or +inf");
  }
  if (snr_db == kNoiseless) return s;

  double energy = 0.0;
  for (const cplx& v : s.samples) energy += std::norm(v);
  const double variance = energy / (static_cast<double>(s.size()) * std::pow(10.0, snr_db / 10.0));
  const double sigma = std::sqrt(variance / 2.0);  // per real dimension

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  modem::TimeSignal out = s;
  for (cplx& v : out.samples) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v += cplx(re, im);
  }
  return out;
}

modem::TimeSignal dd_channel(const modem::TimeSignal& s, const std::vector<ChannelTap>& taps) {
  if (taps.empty()) throw Error(ErrorCode::EmptyInput, "channel needs at least one tap");
  const auto len = static_cast<long long>(s.size());
  for (const auto& t : taps) {
    if (t.delay_samples < 0 || t.delay_samples >= len) {
      throw Error(ErrorCode::DelayOutOfRange,
                  "delay " + std::to_string(t.delay_samples) + " outside [0, " + std::to_string(len) + ")");
    }
    if (!std::isfinite(t.gain.real()) || !std::isfinite(t.gain.imag())) {
      throw Error(ErrorCode::NonFinite, "tap gain is not finite");
    }
  }

  modem::TimeSignal out;
  out.sample_rate_hz = s.sample_rate_hz;
  out.samples.assign(s.size(), cplx{});
  for (const auto& t : taps) {
    // Doppler phase depends on k only through (doppler * k) mod L.
    const long long dop = ((t.doppler_index % len) + len) % len;
    for (long long k = 0; k < len; ++k) {
      const long long phase_idx = (dop * k) % len;
      const cplx rot = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase_idx) /
                                           static_cast<double>(len));
      const long long src = ((k - t.delay_samples) % len + len) % len;
      out.samples[static_cast<std::size_t>(k)] += t.gain * rot * s.samples[static_cast<std::size_t>(src)];
    }
  }
  return out;
}

}  // namespace otfs::channel
