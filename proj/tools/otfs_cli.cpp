// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: PRBS export, QAM mapping, a single-frame OTFS
// transmit/receive run, BER sweeps, fixed-vs-float error reports and
// throughput accounting. All outputs are CSV (JSON for configs).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "otfs/channel.hpp"
#include "otfs/harness.hpp"
#include "otfs/io.hpp"
#include "otfs/modem.hpp"
#include "otfs/prbs.hpp"
#include "otfs/qam.hpp"

namespace fs = std::filesystem;
using namespace otfs;

namespace {

struct Output {
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorCode::Io, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::uint16_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(text, &used, 0);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "bad seed '" + text + "'");
  }
  if (used != text.size() || v == 0 || v > 0xFFFF) {
    throw Error(ErrorCode::InvalidArgument, "seed must be a nonzero 16-bit value, got '" + text + "'");
  }
  return static_cast<std::uint16_t>(v);
}

modem::Arithmetic parse_arith(const std::string& s) {
  if (s == "float") return modem::Arithmetic::Float;
  if (s == "fixed") return modem::Arithmetic::Fixed;
  throw Error(ErrorCode::InvalidArgument, "--arith must be float or fixed");
}

template <class F>
void write_file(const fs::path& path, F&& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::Io, "cannot write " + path.string());
  body(os);
}

struct GridOpts {
  long long n = 64;
  long long m = 64;
  double delta_f = kDefaultSubcarrierSpacing;

  void add(CLI::App* app) {
    app->add_option("--n", n, "Doppler bins (rows)")->capture_default_str();
    app->add_option("--m", m, "delay bins (columns)")->capture_default_str();
    app->add_option("--delta-f", delta_f, "subcarrier spacing in Hz; T = 1/delta_f")->capture_default_str();
  }
  GridParams grid() const { return make_grid(n, m, delta_f, 1.0 / delta_f); }
};

// ---------------------------------------------------------------------------

struct PrbsCmd {
  int order = 4;
  std::string seed = "0xFFFF";
  std::string out = "-";
  bool packed = false;
  std::optional<std::size_t> max_lag;
  std::string autocorr_out = "autocorr.csv";

  void run() const {
    const BitStream bits = prbs::generate_bits(mod_order_from_int(order), parse_seed(seed));
    Output o(out);
    if (packed) io::write_bits_packed(o.stream(), bits);
    else io::write_bits_text(o.stream(), bits);
    if (max_lag) {
      Output a(autocorr_out);
      io::write_autocorr_csv(a.stream(), prbs::autocorrelation(bits, *max_lag));
    }
  }
};

struct ModulateCmd {
  int order = 4;
  std::string seed = "0xFFFF";
  std::string in;
  std::string out = "-";
  bool fixed = false;
  std::string constellation_out;

  void run() const {
    const ModOrder mo = mod_order_from_int(order);
    BitStream bits;
    if (in.empty()) {
      bits = prbs::generate_bits(mo, parse_seed(seed));
    } else {
      std::ifstream is(in);
      if (!is) throw Error(ErrorCode::Io, "cannot open " + in);
      bits = io::read_bits_text(is);
    }
    auto symbols = qam::modulate(bits, mo);
    if (fixed) symbols = qam::dequantize_symbols(qam::quantize_symbols(symbols));
    Output o(out);
    io::write_complex_csv(o.stream(), symbols);
    if (!constellation_out.empty()) {
      Output c(constellation_out);
      io::write_constellation_csv(c.stream(), qam::constellation(mo));
    }
  }
};

struct TxRxCmd {
  int order = 32;
  GridOpts grid_opts;
  std::string arith = "float";
  int frac_bits = spectral::kDefaultStageFracBits;
  bool ofdm_mode = false;
  double snr_db = channel::kNoiseless;
  std::string taps_path;
  std::string seed = "0xFFFF";
  std::string out_dir = "otfs_out";

  void run() const {
    const ModOrder mo = mod_order_from_int(order);
    const GridParams grid = grid_opts.grid();
    const std::uint16_t lfsr_seed = parse_seed(seed);
    modem::PipelineConfig cfg;
    cfg.arithmetic = parse_arith(arith);
    cfg.frac_bits = frac_bits;
    cfg.ofdm_mode = ofdm_mode;
    const auto window = modem::Window::ones(grid);
    std::vector<channel::ChannelTap> taps;
    if (!taps_path.empty()) taps = io::taps_from_json(io::read_file(taps_path));

    const BitStream tx_bits = prbs::generate(lfsr_seed, grid.size() * static_cast<std::size_t>(bits_per_symbol(mo)));
    const auto symbols = qam::modulate(tx_bits, mo);
    const Frame dd = modem::symbols_to_frame(symbols, grid);
    const modem::TimeSignal tx = modem::transmit(tx_bits, mo, grid, window, cfg);

    modem::TimeSignal rx = tx;
    if (!taps.empty()) rx = channel::dd_channel(rx, taps);
    rx = channel::awgn(rx, snr_db, lfsr_seed);
    const BitStream rx_bits = modem::receive(rx, mo, grid, window, cfg);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_file(dir / "grid.json", [&](std::ostream& os) { os << io::grid_to_json(grid) << '\n'; });
    write_file(dir / "tx_bits.txt", [&](std::ostream& os) { io::write_bits_text(os, tx_bits); });
    write_file(dir / "dd_frame.csv", [&](std::ostream& os) { io::write_frame_csv(os, dd); });
    write_file(dir / "tx_signal.csv", [&](std::ostream& os) { io::write_complex_csv(os, tx.samples); });
    write_file(dir / "rx_signal.csv", [&](std::ostream& os) { io::write_complex_csv(os, rx.samples); });
    write_file(dir / "rx_bits.txt", [&](std::ostream& os) { io::write_bits_text(os, rx_bits); });

    if (cfg.arithmetic == modem::Arithmetic::Fixed) {
      modem::PipelineConfig ref = cfg;
      ref.arithmetic = modem::Arithmetic::Float;
      const auto tx_float = modem::transmit(tx_bits, mo, grid, window, ref);
      write_file(dir / "error_report.csv", [&](std::ostream& os) {
        io::write_error_report_csv(os, harness::error_report(tx.samples, tx_float.samples));
      });
    }

    const auto errors = harness::bit_errors(tx_bits, rx_bits);
    write_file(dir / "summary.csv", [&](std::ostream& os) {
      os << "order,n,m,arith,frac_bits,ofdm_mode,snr_db,bit_count,bit_errors,ber\n"
         << order << ',' << grid.n_doppler() << ',' << grid.m_delay() << ',' << arith << ',' << frac_bits << ','
         << (ofdm_mode ? 1 : 0) << ',' << io::format_double(snr_db) << ',' << tx_bits.size() << ',' << errors
         << ',' << io::format_double(harness::ber(tx_bits, rx_bits)) << '\n';
    });
    std::cout << "bits=" << tx_bits.size() << " errors=" << errors << " ber=" << io::format_double(harness::ber(tx_bits, rx_bits))
              << " out=" << out_dir << '\n';
  }
};

struct SweepCmd {
  int order = 4;
  GridOpts grid_opts;
  std::vector<double> snr_db{0, 2, 4, 6, 8, 10};
  bool ebn0 = false;
  std::string taps_path;
  std::size_t frames = 16;
  std::uint64_t seed = 1;
  std::string arith = "float";
  int frac_bits = spectral::kDefaultStageFracBits;
  bool ofdm_mode = false;
  std::string out = "-";

  void run() const {
    harness::SweepConfig cfg;
    cfg.order = mod_order_from_int(order);
    cfg.grid = grid_opts.grid();
    for (double s : snr_db) cfg.snr_db.push_back(ebn0 ? harness::ebn0_to_snr_db(s, cfg.order) : s);
    if (!taps_path.empty()) cfg.taps = io::taps_from_json(io::read_file(taps_path));
    cfg.frames_per_point = frames;
    cfg.seed = seed;
    cfg.pipeline.arithmetic = parse_arith(arith);
    cfg.pipeline.frac_bits = frac_bits;
    cfg.pipeline.ofdm_mode = ofdm_mode;
    const auto pts = harness::ber_sweep(cfg);
    Output o(out);
    io::write_sweep_csv(o.stream(), pts);
  }
};

struct ErrorReportCmd {
  std::string a_path;
  std::string b_path;
  int order = 32;
  GridOpts grid_opts;
  std::string seed = "0xFFFF";
  int frac_bits = spectral::kDefaultStageFracBits;
  std::string out = "-";

  void run() const {
    harness::ErrorReport r;
    if (!a_path.empty() || !b_path.empty()) {
      if (a_path.empty() || b_path.empty()) throw Error(ErrorCode::InvalidArgument, "--a and --b go together");
      std::ifstream a(a_path), b(b_path);
      if (!a) throw Error(ErrorCode::Io, "cannot open " + a_path);
      if (!b) throw Error(ErrorCode::Io, "cannot open " + b_path);
      r = harness::error_report(io::read_complex_csv(a), io::read_complex_csv(b));
    } else {
      // Fixed-point transmit chain against the float reference.
      const ModOrder mo = mod_order_from_int(order);
      const GridParams grid = grid_opts.grid();
      const auto window = modem::Window::ones(grid);
      const BitStream bits = prbs::generate(parse_seed(seed), grid.size() * static_cast<std::size_t>(bits_per_symbol(mo)));
      modem::PipelineConfig fixed;
      fixed.arithmetic = modem::Arithmetic::Fixed;
      fixed.frac_bits = frac_bits;
      const auto fx = modem::transmit(bits, mo, grid, window, fixed);
      const auto fl = modem::transmit(bits, mo, grid, window, {});
      r = harness::error_report(fx.samples, fl.samples);
    }
    Output o(out);
    io::write_error_report_csv(o.stream(), r);
  }
};

struct BudgetCmd {
  std::uint64_t bits = 20480;
  double latency_us = 0.0;
  std::optional<double> power_w;
  std::string out = "-";

  void run() const {
    Output o(out);
    io::write_budget_csv(o.stream(), harness::budget_report(bits, latency_us * 1e-6, power_w));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OTFS baseband transceiver model"};
  app.require_subcommand(1);

  PrbsCmd prbs_cmd;
  auto* prbs = app.add_subcommand("prbs", "Export LFSR bits and their autocorrelation");
  prbs->add_option("--order", prbs_cmd.order, "modulation order (sets the bit budget)")->capture_default_str();
  prbs->add_option("--seed", prbs_cmd.seed, "nonzero 16-bit LFSR seed")->capture_default_str();
  prbs->add_option("--out", prbs_cmd.out, "bit file, '-' for stdout")->capture_default_str();
  prbs->add_flag("--packed", prbs_cmd.packed, "pack bits MSB first instead of one per line");
  prbs->add_option("--autocorr-max-lag", prbs_cmd.max_lag, "also export circular autocorrelation up to this lag");
  prbs->add_option("--autocorr-out", prbs_cmd.autocorr_out, "autocorrelation CSV path")->capture_default_str();
  prbs->callback([&] { prbs_cmd.run(); });

  ModulateCmd mod_cmd;
  auto* mod = app.add_subcommand("modulate", "Map bits to QAM symbols");
  mod->add_option("--order", mod_cmd.order)->capture_default_str();
  mod->add_option("--seed", mod_cmd.seed, "LFSR seed when --in is not given")->capture_default_str();
  mod->add_option("--in", mod_cmd.in, "bit file, one 0/1 per line");
  mod->add_option("--out", mod_cmd.out, "symbol CSV (idx,re,im)")->capture_default_str();
  mod->add_flag("--fixed", mod_cmd.fixed, "round symbols through Q2.10");
  mod->add_option("--constellation-out", mod_cmd.constellation_out, "dump the LUT as CSV");
  mod->callback([&] { mod_cmd.run(); });

  TxRxCmd txrx_cmd;
  auto* txrx = app.add_subcommand("txrx", "Run one frame through transmitter, channel and receiver");
  txrx->add_option("--order", txrx_cmd.order)->check(CLI::IsMember({4, 8, 16, 32}))->capture_default_str();
  txrx_cmd.grid_opts.add(txrx);
  txrx->add_option("--arith", txrx_cmd.arith)->check(CLI::IsMember({"float", "fixed"}))->capture_default_str();
  txrx->add_option("--frac-bits", txrx_cmd.frac_bits, "stage word fractional bits")->capture_default_str();
  txrx->add_flag("--ofdm-mode", txrx_cmd.ofdm_mode, "skip the transpose and delay-axis transform");
  txrx->add_option("--snr-db", txrx_cmd.snr_db, "per-sample SNR; inf for noiseless");
  txrx->add_option("--taps", txrx_cmd.taps_path, "JSON tap profile");
  txrx->add_option("--seed", txrx_cmd.seed, "LFSR seed, also seeds the noise")->capture_default_str();
  txrx->add_option("--out-dir", txrx_cmd.out_dir)->capture_default_str();
  txrx->callback([&] { txrx_cmd.run(); });

  SweepCmd sweep_cmd;
  auto* sweep = app.add_subcommand("ber-sweep", "Monte-Carlo BER over a list of SNRs");
  sweep->add_option("--order", sweep_cmd.order)->check(CLI::IsMember({4, 8, 16, 32}))->capture_default_str();
  sweep_cmd.grid_opts.add(sweep);
  sweep->add_option("--snr-db", sweep_cmd.snr_db, "comma separated SNR list")->delimiter(',');
  sweep->add_flag("--ebn0", sweep_cmd.ebn0, "interpret --snr-db values as Eb/N0");
  sweep->add_option("--taps", sweep_cmd.taps_path, "JSON tap profile");
  sweep->add_option("--frames", sweep_cmd.frames, "frames per SNR point")->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--seed", sweep_cmd.seed)->capture_default_str();
  sweep->add_option("--arith", sweep_cmd.arith)->check(CLI::IsMember({"float", "fixed"}))->capture_default_str();
  sweep->add_option("--frac-bits", sweep_cmd.frac_bits)->capture_default_str();
  sweep->add_flag("--ofdm-mode", sweep_cmd.ofdm_mode);
  sweep->add_option("--out", sweep_cmd.out)->capture_default_str();
  sweep->callback([&] { sweep_cmd.run(); });

  ErrorReportCmd err_cmd;
  auto* err = app.add_subcommand("error-report", "Compare two sample CSVs, or fixed vs float transmit output");
  err->add_option("--a", err_cmd.a_path, "sample CSV (idx,re,im)");
  err->add_option("--b", err_cmd.b_path, "sample CSV (idx,re,im)");
  err->add_option("--order", err_cmd.order)->capture_default_str();
  err_cmd.grid_opts.add(err);
  err->add_option("--seed", err_cmd.seed)->capture_default_str();
  err->add_option("--frac-bits", err_cmd.frac_bits)->capture_default_str();
  err->add_option("--out", err_cmd.out)->capture_default_str();
  err->callback([&] { err_cmd.run(); });

  BudgetCmd budget_cmd;
  auto* budget = app.add_subcommand("budget", "Throughput and efficiency accounting");
  budget->add_option("--bits", budget_cmd.bits)->capture_default_str();
  budget->add_option("--latency-us", budget_cmd.latency_us)->required();
  budget->add_option("--power-w", budget_cmd.power_w);
  budget->add_option("--out", budget_cmd.out)->capture_default_str();
  budget->callback([&] { budget_cmd.run(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const otfs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
