// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "otfs/channel.hpp"
#include "otfs/core.hpp"
#include "otfs/harness.hpp"
#include "otfs/prbs.hpp"
#include "otfs/qam.hpp"

namespace otfs::io {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

void write_frame_csv(std::ostream& os, const Frame& f);  // row,col,re,im
Frame read_frame_csv(std::istream& is, Domain domain);

void write_complex_csv(std::ostream& os, const std::vector<cplx>& x);  // idx,re,im
std::vector<cplx> read_complex_csv(std::istream& is);

std::string grid_to_json(const GridParams& g);
GridParams grid_from_json(const std::string& text);

/// One ASCII '0'/'1' per line.
void write_bits_text(std::ostream& os, const BitStream& b);
/// MSB first per byte; the last byte is zero padded.
void write_bits_packed(std::ostream& os, const BitStream& b);
BitStream read_bits_text(std::istream& is);

void write_autocorr_csv(std::ostream& os, const std::vector<double>& rho);  // lag,rho
void write_constellation_csv(std::ostream& os, const qam::Constellation& c);

/// JSON array of {delay, doppler, gain_re, gain_im}.
std::vector<channel::ChannelTap> taps_from_json(const std::string& text);
std::string taps_to_json(const std::vector<channel::ChannelTap>& taps);

void write_error_report_csv(std::ostream& os, const harness::ErrorReport& r);
void write_budget_csv(std::ostream& os, const harness::BudgetReport& r);
void write_sweep_csv(std::ostream& os, const std::vector<harness::SweepPoint>& pts);

std::string read_file(const std::string& path);

}  // namespace otfs::io
