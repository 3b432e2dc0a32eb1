// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "otfs/modem.hpp"

namespace otfs::channel {

/// One path on the DD grid. Delay is circular within the frame; Doppler is
/// an integer number of cycles per frame.
struct ChannelTap {
  long long delay_samples = 0;
  long long doppler_index = 0;
  cplx gain{1.0, 0.0};
};

inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

/// Adds circular complex Gaussian noise with per-sample variance
/// |s|^2 / (len * 10^(snr_db / 10)). snr_db = +inf returns s unchanged.
modem::TimeSignal awgn(const modem::TimeSignal& s, double snr_db, std::uint64_t seed);

/// r[k] = sum_taps gain * exp(j 2 pi doppler k / L) * s[(k - delay) mod L].
/// Throws EmptyInput for no taps, DelayOutOfRange, NonFinite gains.
modem::TimeSignal dd_channel(const modem::TimeSignal& s, const std::vector<ChannelTap>& taps);

}  // namespace otfs::channel
