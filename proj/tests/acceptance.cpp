// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints one PASS/FAIL line with its
// measured values and wall time; the runtime budget is part of the check.

#include <bit>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "otfs/channel.hpp"
#include "otfs/harness.hpp"
#include "otfs/io.hpp"
#include "otfs/modem.hpp"
#include "otfs/prbs.hpp"
#include "otfs/qam.hpp"
#include "otfs/spectral.hpp"

namespace fs = std::filesystem;
using namespace otfs;

namespace {

constexpr ModOrder kOrders[] = {ModOrder::Qam4, ModOrder::Qam8, ModOrder::Qam16, ModOrder::Qam32};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail += "[failed: " + what + "] ";
    }
  }
  void note(const std::string& s) { detail += s + " "; }
};

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

int g_failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(secs < budget_s, "runtime " + num(secs) + " s over budget " + num(budget_s) + " s");
  if (!out.pass) ++g_failures;
  std::printf("%s AC%-2d %-34s (%.2f s / %.0f s) %s\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), secs, budget_s,
              out.detail.c_str());
  std::fflush(stdout);
}

BitStream random_frame_bits(ModOrder o, const GridParams& g, std::uint64_t seed) {
  return harness::frame_bits(o, g, seed);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(OTFS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Fixed-vs-float transmit error over the AC8 frame set, captured on the
// first run and locked.
const double kFixedVsFloatBaseline[] = {
    /* 4  */ 0.0006914101693396616,
    /* 8  */ 0.0006570097588601717,
    /* 16 */ 0.001712865097114024,
    /* 32 */ 0.0007686616441847494,
};

}  // namespace

int main() {
  const GridParams grid = make_grid(64, 64);
  const auto window = modem::Window::ones(grid);

  criterion(1, "bit budgets", 1.0, [](Outcome& o) {
    const std::size_t expect[] = {8192, 12288, 16384, 20480};
    for (int i = 0; i < 4; ++i) {
      const auto n = prbs::generate_bits(kOrders[i], prbs::kDefaultSeed).size();
      o.require(n == expect[i], "order " + std::to_string(static_cast<int>(kOrders[i])) + " gave " + std::to_string(n));
    }
    o.note("8192/12288/16384/20480");
  });

  criterion(2, "LFSR m-sequence", 30.0, [](Outcome& o) {
    prbs::LfsrState s(0xFFFF);
    std::size_t period = 0;
    do {
      s = prbs::lfsr_next(s).second;
      ++period;
    } while (s.value() != 0xFFFF && period < 70000);
    o.require(period == 65535, "period " + std::to_string(period));

    const auto bits = prbs::generate(0xFFFF, prbs::kPeriod);
    std::size_t ones = 0;
    for (auto b : bits.bits) ones += b;
    o.require(ones == 32768 && bits.size() - ones == 32767, "balance " + std::to_string(ones));

    const auto sums = prbs::autocorrelation_sums(bits.bits, prbs::kPeriod - 1);
    std::size_t bad = 0;
    for (std::size_t k = 1; k < sums.size(); ++k) bad += sums[k] != -1;
    o.require(sums[0] == 65535, "C(0)");
    o.require(bad == 0, std::to_string(bad) + " lags off -1/65535");
    o.note("period=" + std::to_string(period) + " ones=" + std::to_string(ones) + " lags_checked=" +
           std::to_string(sums.size() - 1));
  });

  criterion(3, "Q2.10 fixed point", 5.0, [](Outcome& o) {
    o.require(quantize_q2_10(971.0 / 1024.0) == 971, "971/1024");
    const double bound = std::ldexp(1.0, -11);
    double worst = 0.0;
    for (int raw = kQ210Min; raw <= kQ210Max; ++raw) {
      const double v = dequantize_q2_10(raw);
      worst = std::max(worst, std::abs(dequantize_q2_10(quantize_q2_10(v)) - v));
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2047.0 / 1024.0);
    for (int i = 0; i < 100000; ++i) {
      const double v = u(rng);
      worst = std::max(worst, std::abs(dequantize_q2_10(quantize_q2_10(v)) - v));
    }
    o.require(worst <= bound, "worst error " + num(worst));
    o.note("max_err=" + num(worst) + " bound=" + num(bound));
  });

  criterion(4, "constellations", 10.0, [](Outcome& o) {
    std::mt19937_64 rng(4);
    for (ModOrder ord : kOrders) {
      const auto& c = qam::constellation(ord);
      double pre = 0.0, post = 0.0;
      for (const auto& p : c.points()) {
        pre += std::norm(p.symbol);
        const FixedSample q{quantize_q2_10(p.symbol.real()), quantize_q2_10(p.symbol.imag())};
        post += std::norm(q.value());
      }
      pre /= c.points().size();
      post /= c.points().size();
      const std::string tag = std::to_string(static_cast<int>(ord));
      o.require(std::abs(pre - 1.0) <= 1e-12, tag + " pre-quant power " + num(pre));
      o.require(std::abs(post - 1.0) <= 5e-3, tag + " post-quant power " + num(post));

      if (ord == ModOrder::Qam4 || ord == ModOrder::Qam16) {
        for (const auto& a : c.points())
          for (const auto& b : c.points())
            if (a.label < b.label && std::abs(std::abs(a.symbol - b.symbol) - 2.0 * c.scale()) < 1e-12)
              o.require(std::popcount(a.label ^ b.label) == 1, tag + " Gray adjacency");
      }

      const std::size_t nbits = 4096 * static_cast<std::size_t>(bits_per_symbol(ord));
      for (int t = 0; t < 100; ++t) {
        BitStream b;
        b.bits.resize(nbits);
        for (auto& x : b.bits) x = static_cast<std::uint8_t>(rng() & 1u);
        if (qam::demodulate(qam::modulate(b, ord), ord) != b) {
          o.require(false, tag + " round trip trial " + std::to_string(t));
          break;
        }
      }
      o.note(tag + ":" + num(post));
    }
  });

  criterion(5, "transform oracles", 120.0, [](Outcome& o) {
    std::mt19937_64 rng(5);
    double worst_pipe = 0.0, worst_inv = 0.0, worst_wh = 0.0, worst_parseval = 0.0;
    for (std::size_t n : {2u, 4u, 8u, 64u}) {
      const GridParams g = make_grid(static_cast<long long>(n), static_cast<long long>(n));
      const int frames = 100;
      const int direct_frames = n == 64 ? 10 : 100;
      for (int f = 0; f < frames; ++f) {
        const auto x = oracle::random_frame(rng, Domain::DelayDoppler, n, n);
        const auto tf = modem::isfft_pipeline(x);
        if (f < direct_frames) worst_pipe = std::max(worst_pipe, oracle::max_abs_diff(tf, modem::isfft_direct(x)));
        worst_inv = std::max(worst_inv, oracle::max_abs_diff(modem::sfft(tf), x));
        const auto s = modem::heisenberg(tf, g);
        worst_wh = std::max(worst_wh, oracle::max_abs_diff(modem::wigner(s, g), tf));
        const double e = oracle::energy(x.data());
        worst_parseval = std::max(worst_parseval, std::abs(oracle::energy(tf.data()) - e) / e);
        worst_parseval = std::max(worst_parseval, std::abs(oracle::energy(s.samples) - e) / e);
        worst_parseval = std::max(worst_parseval, std::abs(oracle::energy(modem::sfft(tf).data()) - e) / e);
      }
    }
    o.require(worst_pipe <= 1e-9, "pipeline vs direct " + num(worst_pipe));
    o.require(worst_inv <= 1e-9, "sfft(isfft) " + num(worst_inv));
    o.require(worst_wh <= 1e-12, "wigner(heisenberg) " + num(worst_wh));
    o.require(worst_parseval <= 1e-9, "Parseval " + num(worst_parseval));
    o.note("pipe=" + num(worst_pipe) + " inv=" + num(worst_inv) + " wh=" + num(worst_wh) + " parseval=" +
           num(worst_parseval));
  });

  criterion(6, "BRAM transpose", 10.0, [](Outcome& o) {
    std::mt19937_64 rng(6);
    std::size_t mismatches = 0, not_involution = 0;
    for (int f = 0; f < 1000; ++f) {
      const auto x = oracle::random_frame(rng, Domain::DelayDoppler, 64, 64);
      const auto cols = x.columns();
      const auto t = spectral::bram_transpose(cols);
      for (std::size_t p = 0; p < 64; ++p)
        for (std::size_t q = 0; q < 64; ++q) mismatches += !(t[p][q] == x(p, q));
      not_involution += spectral::bram_transpose(t) != cols;
    }
    o.require(mismatches == 0, std::to_string(mismatches) + " element mismatches");
    o.require(not_involution == 0, std::to_string(not_involution) + " double transposes differ");
    o.note("frames=1000 mismatches=" + std::to_string(mismatches));
  });

  criterion(7, "float loopback", 30.0, [&](Outcome& o) {
    for (ModOrder ord : kOrders) {
      std::size_t bad = 0;
      for (int f = 0; f < 50; ++f) {
        const auto b = random_frame_bits(ord, grid, 7000 + f);
        bad += modem::receive(modem::transmit(b, ord, grid, window), ord, grid, window) != b;
      }
      o.require(bad == 0, std::to_string(bad) + " frames wrong at order " + std::to_string(static_cast<int>(ord)));
    }
    o.note("4 orders x 50 frames bit exact");
  });

  criterion(8, "fixed-point loopback", 60.0, [&](Outcome& o) {
    modem::PipelineConfig fixed;
    fixed.arithmetic = modem::Arithmetic::Fixed;
    for (int i = 0; i < 4; ++i) {
      const ModOrder ord = kOrders[i];
      std::uint64_t errors = 0;
      double worst = 0.0;
      for (int f = 0; f < 50; ++f) {
        const auto b = random_frame_bits(ord, grid, 8000 + f);
        const auto fx = modem::transmit(b, ord, grid, window, fixed);
        const auto fl = modem::transmit(b, ord, grid, window);
        errors += harness::bit_errors(b, modem::receive(fx, ord, grid, window, fixed));
        worst = std::max(worst, harness::error_report(fx.samples, fl.samples).max_abs_error);
      }
      const std::string tag = std::to_string(static_cast<int>(ord));
      o.require(errors == 0, tag + " bit errors " + std::to_string(errors));
      o.require(worst == kFixedVsFloatBaseline[i], tag + " max_abs_error " + io::format_double(worst) +
                                                       " != baseline " + io::format_double(kFixedVsFloatBaseline[i]));
      o.note(tag + ":" + io::format_double(worst));
    }
  });

  criterion(9, "AWGN calibration (QPSK)", 120.0, [&](Outcome& o) {
    harness::SweepConfig cfg;
    cfg.order = ModOrder::Qam4;
    cfg.grid = grid;
    const double ebn0[] = {4.0, 6.0, 8.0};
    for (double e : ebn0) cfg.snr_db.push_back(harness::ebn0_to_snr_db(e, cfg.order));
    cfg.frames_per_point = 123;  // 123 * 8192 >= 1e6 bits
    cfg.seed = 9000;
    const auto pts = harness::ber_sweep(cfg);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      o.require(pts[i].bit_count >= 1000000, "bit count");
      o.require(pts[i].ber > 0.0, "no errors observed at " + num(ebn0[i]) + " dB");
      if (pts[i].ber <= 0.0) continue;
      const double measured = harness::qpsk_theory_ebn0_for_ber(pts[i].ber);
      const double gap = measured - ebn0[i];
      o.require(std::abs(gap) <= 0.5, "gap " + num(gap) + " dB at " + num(ebn0[i]) + " dB");
      o.note(num(ebn0[i]) + "dB: ber=" + num(pts[i].ber) + " theory=" + num(harness::qpsk_theory_ber(ebn0[i])) +
             " gap=" + num(gap) + "dB");
    }
  });

  criterion(10, "OFDM degenerate mode", 5.0, [&](Outcome& o) {
    modem::PipelineConfig cfg;
    cfg.ofdm_mode = true;
    const auto bits = prbs::generate_bits(ModOrder::Qam16, prbs::kDefaultSeed);
    const auto tx = modem::transmit(bits, ModOrder::Qam16, grid, window, cfg);

    // Reference chain: fill DD grid, IFFT each Doppler column, window, per-block IFFT.
    const auto sym = qam::modulate(bits, ModOrder::Qam16);
    std::vector<std::vector<cplx>> cols(64, std::vector<cplx>(64));
    for (std::size_t i = 0; i < sym.size(); ++i) cols[i / 64][i % 64] = sym[i];
    for (auto& c : cols) c = spectral::fft_n(c, spectral::Direction::Inverse);
    std::vector<cplx> ref;
    for (std::size_t n = 0; n < 64; ++n) {
      std::vector<cplx> row(64);
      for (std::size_t m = 0; m < 64; ++m) row[m] = cols[m][n] * window(n, m);
      const auto block = spectral::fft_n(row, spectral::Direction::Inverse);
      ref.insert(ref.end(), block.begin(), block.end());
    }
    o.require(tx.samples == ref, "library TX differs from reference chain");

    const auto dir = fs::temp_directory_path() / "otfs_ac10";
    fs::remove_all(dir);
    o.require(run_cli("txrx --ofdm-mode --order 16 --seed 0xFFFF --out-dir " + dir.string()) == 0, "CLI exit code");
    std::ifstream in(dir / "tx_signal.csv");
    o.require(io::read_complex_csv(in) == ref, "CLI tx_signal.csv differs from reference chain");
    o.note("bit identical (library and CLI)");
  });

  criterion(11, "CLI determinism", 10.0, [](Outcome& o) {
    const auto base = fs::temp_directory_path() / "otfs_ac11";
    fs::remove_all(base);
    fs::create_directories(base);
    const auto taps = base / "taps.json";
    std::ofstream(taps) << R"([{"delay": 0, "doppler": 0, "gain_re": 1.0, "gain_im": 0.0},)"
                           R"( {"delay": 3, "doppler": 1, "gain_re": 0.05, "gain_im": -0.02}])";
    const std::string flags = "txrx --order 32 --n 64 --m 64 --arith fixed --frac-bits 12 --snr-db 25 --seed 0xACE1 --taps " +
                              taps.string();
    o.require(run_cli(flags + " --out-dir " + (base / "a").string()) == 0, "first run");
    o.require(run_cli(flags + " --out-dir " + (base / "b").string()) == 0, "second run");
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(base / "a")) {
      const auto other = base / "b" / e.path().filename();
      o.require(fs::exists(other) && oracle::read_text(e.path().string()) == oracle::read_text(other.string()),
                e.path().filename().string() + " differs");
      ++files;
    }
    o.require(files >= 7, "expected outputs missing");
    o.note(std::to_string(files) + " files byte identical");
  });

  std::printf("%s: %d failing criteria\n", g_failures == 0 ? "ACCEPTED" : "REJECTED", g_failures);
  return g_failures == 0 ? 0 : 1;
}
