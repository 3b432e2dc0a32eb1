// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <bit>
#include <set>

#include "oracles.hpp"
#include "otfs/qam.hpp"

using namespace otfs;

namespace {

const ModOrder kOrders[] = {ModOrder::Qam4, ModOrder::Qam8, ModOrder::Qam16, ModOrder::Qam32};

BitStream random_bits(std::mt19937_64& rng, std::size_t n) {
  BitStream b;
  b.bits.resize(n);
  for (auto& x : b.bits) x = static_cast<std::uint8_t>(rng() & 1u);
  return b;
}

}  // namespace

TEST_CASE("constellations match the golden LUT dumps") {
  for (ModOrder o : kOrders) {
    const auto& c = qam::constellation(o);
    const auto rows = oracle::read_csv(std::string(OTFS_GOLDEN_DIR) + "/constellation_" +
                                       std::to_string(static_cast<int>(o)) + ".csv");
    REQUIRE(rows.size() == c.points().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(std::stoul(rows[i][0], nullptr, 2) == c.points()[i].label);
      CHECK(std::abs(std::stod(rows[i][1]) - c.points()[i].symbol.real()) < 1e-15);
      CHECK(std::abs(std::stod(rows[i][2]) - c.points()[i].symbol.imag()) < 1e-15);
      CHECK(std::stoi(rows[i][3]) == quantize_q2_10(c.points()[i].symbol.real()));
      CHECK(std::stoi(rows[i][4]) == quantize_q2_10(c.points()[i].symbol.imag()));
    }
  }
}

TEST_CASE("unit average power and scale factors") {
  // Average |s|^2 on the unscaled odd grids: QPSK 2, 8-QAM 6, 16-QAM 10, cross-32 20.
  const std::pair<ModOrder, double> grid_power[] = {
      {ModOrder::Qam4, 2.0}, {ModOrder::Qam8, 6.0}, {ModOrder::Qam16, 10.0}, {ModOrder::Qam32, 20.0}};
  for (auto [o, p] : grid_power) {
    const auto& c = qam::constellation(o);
    CHECK(c.scale() == doctest::Approx(1.0 / std::sqrt(p)).epsilon(1e-15));
    double mean = 0.0;
    for (const auto& pt : c.points()) mean += std::norm(pt.symbol);
    mean /= static_cast<double>(c.points().size());
    CHECK(std::abs(mean - 1.0) < 1e-12);

    std::set<std::uint32_t> labels;
    for (const auto& pt : c.points()) labels.insert(pt.label);
    CHECK(labels.size() == static_cast<std::size_t>(o));
    CHECK(*labels.rbegin() == static_cast<std::uint32_t>(o) - 1);
  }
  const auto& q4 = qam::constellation(ModOrder::Qam4);
  for (const auto& pt : q4.points()) {
    CHECK(std::abs(std::abs(pt.symbol.real()) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(std::abs(pt.symbol.imag()) - 1.0 / std::sqrt(2.0)) < 1e-15);
  }
}

TEST_CASE("32-QAM is the 6x6 cross") {
  const auto& c = qam::constellation(ModOrder::Qam32);
  std::set<std::pair<int, int>> grid;
  for (const auto& pt : c.points()) {
    grid.insert({static_cast<int>(std::lround(pt.symbol.real() / c.scale())),
                 static_cast<int>(std::lround(pt.symbol.imag() / c.scale()))});
  }
  std::set<std::pair<int, int>> cross;
  for (int i = -5; i <= 5; i += 2)
    for (int q = -5; q <= 5; q += 2)
      if (!(std::abs(i) == 5 && std::abs(q) == 5)) cross.insert({i, q});
  CHECK(grid == cross);
}

TEST_CASE("Gray adjacency for square orders") {
  for (ModOrder o : {ModOrder::Qam4, ModOrder::Qam16}) {
    const auto& c = qam::constellation(o);
    const double step = 2.0 * c.scale();
    int pairs = 0;
    for (const auto& a : c.points()) {
      for (const auto& b : c.points()) {
        if (a.label >= b.label) continue;
        if (std::abs(std::abs(a.symbol - b.symbol) - step) < 1e-12) {
          CHECK(std::popcount(a.label ^ b.label) == 1);
          ++pairs;
        }
      }
    }
    const int side = o == ModOrder::Qam4 ? 2 : 4;
    CHECK(pairs == 2 * side * (side - 1));
  }
}

TEST_CASE("modulate lengths and errors") {
  CHECK(qam::modulate(prbs::generate_bits(ModOrder::Qam4, 0xFFFF), ModOrder::Qam4).size() == 4096);
  CHECK(qam::modulate(prbs::generate_bits(ModOrder::Qam32, 0xFFFF), ModOrder::Qam32).size() == 4096);
  try {
    qam::modulate(BitStream{{1, 0, 1}, std::nullopt}, ModOrder::Qam4);
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
  CHECK_THROWS_AS(qam::modulate(BitStream{{1, 0}, std::nullopt}, static_cast<ModOrder>(64)), Error);
}

TEST_CASE("modulate groups bits MSB first") {
  const auto& c = qam::constellation(ModOrder::Qam16);
  const auto s = qam::modulate(BitStream{{1, 0, 1, 1, 0, 0, 1, 0}, std::nullopt}, ModOrder::Qam16);
  CHECK(s[0] == c.symbol(0b1011));
  CHECK(s[1] == c.symbol(0b0010));
}

TEST_CASE("quantize_symbols examples") {
  const cplx pts[] = {{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}, {0.0, 0.0}, {3.0 / std::sqrt(10.0), 3.0 / std::sqrt(10.0)}};
  const auto q = qam::quantize_symbols(pts);
  // 0.70710678 * 1024 = 724.08; 0.9486833 * 1024 = 971.45
  CHECK(q[0] == FixedSample{724, 724});
  CHECK(q[1] == FixedSample{0, 0});
  CHECK(q[2] == FixedSample{971, 971});
  const cplx bad[] = {{std::nan(""), 0.0}};
  CHECK_THROWS_AS(qam::quantize_symbols(bad), Error);
}

TEST_CASE("demodulate recovers exact labels and tolerates small perturbations") {
  std::mt19937_64 rng(3);
  for (ModOrder o : kOrders) {
    const auto& c = qam::constellation(o);
    std::vector<cplx> exact;
    for (const auto& p : c.points()) exact.push_back(p.symbol);
    const auto bits = qam::demodulate(exact, o);
    const auto k = static_cast<std::size_t>(c.bits_per_symbol());
    for (std::size_t i = 0; i < exact.size(); ++i) {
      std::uint32_t label = 0;
      for (std::size_t b = 0; b < k; ++b) label = (label << 1) | bits.bits[i * k + b];
      CHECK(label == c.points()[i].label);
    }

    // d_min by pairwise enumeration
    double dmin = 1e9;
    for (const auto& a : c.points())
      for (const auto& b : c.points())
        if (a.label != b.label) dmin = std::min(dmin, std::abs(a.symbol - b.symbol));
    CHECK(c.min_distance() == doctest::Approx(dmin));
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> rad(0.0, 0.499 * dmin);
    for (int t = 0; t < 2000; ++t) {
      const auto& p = c.points()[rng() % c.points().size()];
      const cplx y = p.symbol + std::polar(rad(rng), ang(rng));
      CHECK(c.nearest(y) == p.label);
    }
  }
}

TEST_CASE("demodulate tie-break takes the lowest LUT index") {
  // The origin is equidistant from all four QPSK points.
  const cplx zero[] = {{0.0, 0.0}};
  CHECK(qam::demodulate(zero, ModOrder::Qam4).bits == std::vector<std::uint8_t>{0, 0});
  // Midpoint between labels 0b10 and 0b11 of QPSK.
  const auto& c = qam::constellation(ModOrder::Qam4);
  const cplx mid[] = {(c.symbol(2) + c.symbol(3)) / 2.0};
  CHECK(qam::demodulate(mid, ModOrder::Qam4).bits == std::vector<std::uint8_t>{1, 0});
  const cplx inf[] = {{INFINITY, 0.0}};
  try {
    qam::demodulate(inf, ModOrder::Qam4);
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFinite);
  }
}

TEST_CASE("round trip through modulate, Q2.10 and demodulate") {
  std::mt19937_64 rng(99);
  for (ModOrder o : kOrders) {
    for (int t = 0; t < 10; ++t) {
      const auto bits = random_bits(rng, 4096 * static_cast<std::size_t>(bits_per_symbol(o)));
      const auto s = qam::modulate(bits, o);
      CHECK(qam::demodulate(s, o) == bits);
      CHECK(qam::demodulate(qam::dequantize_symbols(qam::quantize_symbols(s)), o) == bits);
    }
  }
}
