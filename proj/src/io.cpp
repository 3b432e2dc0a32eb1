// SPDX-License-Identifier: Apache-2.0
#include "otfs/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace otfs::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::Parse, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

long long parse_int(std::string_view s) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::Parse, "not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

void expect_header(std::istream& is, std::string_view header) {
  std::string line;
  if (!std::getline(is, line) || trim_cr(line) != header) {
    throw Error(ErrorCode::Parse, "expected CSV header '" + std::string(header) + "'");
  }
}

}  // namespace

void write_frame_csv(std::ostream& os, const Frame& f) {
  os << "row,col,re,im\n";
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (std::size_t c = 0; c < f.cols(); ++c) {
      os << r << ',' << c << ',' << format_double(f(r, c).real()) << ',' << format_double(f(r, c).imag()) << '\n';
    }
  }
}

Frame read_frame_csv(std::istream& is, Domain domain) {
  expect_header(is, "row,col,re,im");
  struct Cell {
    std::size_t r, c;
    cplx v;
  };
  std::vector<Cell> cells;
  std::size_t rows = 0, cols = 0;
  std::string line;
  while (std::getline(is, line)) {
    const auto t = trim_cr(line);
    if (t.empty()) continue;
    const auto f = split(t, ',');
    if (f.size() != 4) throw Error(ErrorCode::Parse, "frame CSV row needs 4 fields");
    const auto r = parse_int(f[0]);
    const auto c = parse_int(f[1]);
    if (r < 0 || c < 0) throw Error(ErrorCode::Parse, "negative frame index");
    cells.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), {parse_double(f[2]), parse_double(f[3])}});
    rows = std::max(rows, cells.back().r + 1);
    cols = std::max(cols, cells.back().c + 1);
  }
  if (cells.size() != rows * cols) throw Error(ErrorCode::Parse, "frame CSV does not cover a full grid");
  Frame out(domain, rows, cols);
  for (const auto& cell : cells) out(cell.r, cell.c) = cell.v;
  return out;
}

void write_complex_csv(std::ostream& os, const std::vector<cplx>& x) {
  os << "idx,re,im\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << i << ',' << format_double(x[i].real()) << ',' << format_double(x[i].imag()) << '\n';
  }
}

std::vector<cplx> read_complex_csv(std::istream& is) {
  expect_header(is, "idx,re,im");
  std::vector<cplx> out;
  std::string line;
  while (std::getline(is, line)) {
    const auto t = trim_cr(line);
    if (t.empty()) continue;
    const auto f = split(t, ',');
    if (f.size() != 3) throw Error(ErrorCode::Parse, "sample CSV row needs 3 fields");
    if (parse_int(f[0]) != static_cast<long long>(out.size())) throw Error(ErrorCode::Parse, "sample CSV out of order");
    out.emplace_back(parse_double(f[1]), parse_double(f[2]));
  }
  return out;
}

std::string grid_to_json(const GridParams& g) {
  json j = {{"n", g.n_doppler()}, {"m", g.m_delay()}, {"delta_f_hz", g.subcarrier_spacing()}, {"t_s", g.symbol_duration()}};
  return j.dump(2);
}

GridParams grid_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    return make_grid(j.at("n").get<long long>(), j.at("m").get<long long>(), j.at("delta_f_hz").get<double>(),
                     j.at("t_s").get<double>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("grid JSON: ") + e.what());
  }
}

void write_bits_text(std::ostream& os, const BitStream& b) {
  std::string buf;
  buf.reserve(b.size() * 2);
  for (auto bit : b.bits) {
    buf.push_back(bit ? '1' : '0');
    buf.push_back('\n');
  }
  os << buf;
}

void write_bits_packed(std::ostream& os, const BitStream& b) {
  std::string buf((b.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.bits[i]) buf[i / 8] = static_cast<char>(buf[i / 8] | (0x80 >> (i % 8)));
  }
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

BitStream read_bits_text(std::istream& is) {
  BitStream b;
  std::string line;
  while (std::getline(is, line)) {
    const auto t = trim_cr(line);
    if (t.empty()) continue;
    if (t == "0") b.bits.push_back(0);
    else if (t == "1") b.bits.push_back(1);
    else throw Error(ErrorCode::Parse, "bit file lines must be 0 or 1");
  }
  return b;
}

void write_autocorr_csv(std::ostream& os, const std::vector<double>& rho) {
  os << "lag,rho\n";
  for (std::size_t k = 0; k < rho.size(); ++k) os << k << ',' << format_double(rho[k]) << '\n';
}

void write_constellation_csv(std::ostream& os, const qam::Constellation& c) {
  os << "label_bits,re,im,re_raw,im_raw\n";
  const int k = c.bits_per_symbol();
  for (const auto& p : c.points()) {
    for (int b = k - 1; b >= 0; --b) os << ((p.label >> b) & 1u);
    os << ',' << format_double(p.symbol.real()) << ',' << format_double(p.symbol.imag()) << ','
       << quantize_q2_10(p.symbol.real()) << ',' << quantize_q2_10(p.symbol.imag()) << '\n';
  }
}

std::vector<channel::ChannelTap> taps_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (!j.is_array()) throw Error(ErrorCode::Parse, "tap profile must be a JSON array");
    std::vector<channel::ChannelTap> taps;
    for (const auto& t : j) {
      taps.push_back({t.at("delay").get<long long>(), t.at("doppler").get<long long>(),
                      cplx(t.at("gain_re").get<double>(), t.at("gain_im").get<double>())});
    }
    return taps;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("tap JSON: ") + e.what());
  }
}

std::string taps_to_json(const std::vector<channel::ChannelTap>& taps) {
  json j = json::array();
  for (const auto& t : taps) {
    j.push_back({{"delay", t.delay_samples}, {"doppler", t.doppler_index}, {"gain_re", t.gain.real()},
                 {"gain_im", t.gain.imag()}});
  }
  return j.dump();
}

void write_error_report_csv(std::ostream& os, const harness::ErrorReport& r) {
  os << "max_abs_error,mean_abs_error,rms_error\n"
     << format_double(r.max_abs_error) << ',' << format_double(r.mean_abs_error) << ','
     << format_double(r.rms_error) << '\n';
}

void write_budget_csv(std::ostream& os, const harness::BudgetReport& r) {
  os << "total_bits,latency_s,effective_rate_bps,power_w,efficiency_bps_per_w,note\n"
     << r.total_bits << ',' << format_double(r.latency_s) << ',' << format_double(r.effective_rate_bps) << ','
     << (r.power_w ? format_double(*r.power_w) : "") << ','
     << (r.efficiency_bps_per_w ? format_double(*r.efficiency_bps_per_w) : "") << ','
     << "arithmetic total_bits/latency; not a measured hardware throughput\n";
}

void write_sweep_csv(std::ostream& os, const std::vector<harness::SweepPoint>& pts) {
  os << "snr_db,ber,bit_count\n";
  for (const auto& p : pts) os << format_double(p.snr_db) << ',' << format_double(p.ber) << ',' << p.bit_count << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace otfs::io
