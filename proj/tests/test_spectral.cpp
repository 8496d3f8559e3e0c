#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "sewi/field.hpp"
#include "sewi/phi.hpp"
#include "sewi/snapshot.hpp"
#include "test_util.hpp"

using namespace sewi;
using std::numbers::pi;

namespace {

// Trapezoid quadrature of (1/(b-a)) int u e^{-i mu_l (x-a)} on `m` points,
// evaluating u directly rather than through a transform.
cplx quadrature_coefficient(const std::function<cplx(double)>& u, const Axis& ax, long l, std::size_t m) {
  cplx s{};
  double h = ax.length() / static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    double x = ax.a + static_cast<double>(j) * h;
    s += u(x) * std::polar(1.0, -ax.mu(l) * (x - ax.a));
  }
  return s / static_cast<double>(m);
}

}  // namespace

TEST(Grid, RejectsOddOrTinyModeCounts) {
  EXPECT_THROW(Grid::line(0, 1, 7), ConfigError);
  EXPECT_THROW(Grid::line(0, 1, 2), ConfigError);
  EXPECT_THROW(Grid::line(1, 0, 8), ConfigError);
  EXPECT_NO_THROW(Grid::line(0, 1, 4));
}

TEST(Grid, FrequencyTable) {
  Axis ax{-16, 16, 32};
  EXPECT_EQ(ax.mu(0), 0.0);
  for (long l = 1; l < 16; ++l) EXPECT_EQ(ax.mu(-l), -ax.mu(l));
  Grid g = Grid::square(-8, 8, 8);
  auto mu2 = g.mu_squared();
  double m1 = Axis{-8, 8, 8}.mu(1), m3 = Axis{-8, 8, 8}.mu(-3);
  EXPECT_DOUBLE_EQ(mu2[slot_of_mode(1, 8) * 8 + slot_of_mode(-3, 8)], m1 * m1 + m3 * m3);
}

TEST(Analyze, SingleModeAndConstant) {
  Grid g = Grid::line(-3.0, 5.0, 16);
  const Axis& ax = g.axis(0);
  auto mode3 = sample([&](const Point& p) { return std::polar(1.0, ax.mu(3) * (p[0] - ax.a)); }, g);
  auto f = analyze(mode3, g);
  for (long l = -8; l < 8; ++l) EXPECT_NEAR(std::abs(f.mode(l) - (l == 3 ? 1.0 : 0.0)), 0.0, 1e-12);

  std::vector<cplx> two(g.size(), cplx{2.0, 0.0});
  auto c = analyze(two, g);
  for (long l = -8; l < 8; ++l) EXPECT_NEAR(std::abs(c.mode(l) - (l == 0 ? 2.0 : 0.0)), 0.0, 1e-12);
}

TEST(Analyze, CosineMatchesDirectQuadrature) {
  Grid g = Grid::line(0.0, 3.0, 16);
  const Axis& ax = g.axis(0);
  auto u = [&](double x) { return cplx{std::cos(ax.mu(1) * (x - ax.a)), 0.0}; };
  auto f = analyze(sample([&](const Point& p) { return u(p[0]); }, g), g);
  for (long l = -8; l < 8; ++l) {
    cplx oracle = quadrature_coefficient(u, ax, l, 8 * ax.n);
    EXPECT_NEAR(std::abs(f.mode(l) - oracle), 0.0, 1e-12) << "l=" << l;
  }
  EXPECT_NEAR(f.mode(1).real(), 0.5, 1e-12);
  EXPECT_NEAR(f.mode(-1).real(), 0.5, 1e-12);
}

TEST(Analyze, LengthMismatch) {
  std::vector<cplx> s(10);
  EXPECT_THROW(analyze(s, Grid::line(0, 1, 8)), DimensionError);
}

TEST(Synthesize, RoundTripIsIdentity) {
  for (const Grid& g : {Grid::line(-16, 16, 64), Grid(Axis{-8, 8, 16}, Axis{0, 2, 8})}) {
    auto s = test::random_samples(g.size(), 7);
    auto back = synthesize(analyze(s, g));
    EXPECT_LT(test::max_abs_diff(s, back), 1e-12);
  }
}

TEST(Synthesize, OffGridEvaluation) {
  Grid g = Grid::line(0.0, 2.0, 8);
  SpectralField f(g);
  f.mode(0) = 1.0;
  std::vector<Point> pts{{0.0, 0}, {0.37, 0}, {2.0, 0}};
  for (cplx v : synthesize(f, pts)) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-15);

  SpectralField one(g);
  one.mode(1) = 1.0;
  std::vector<Point> quarter{{0.5, 0}};
  EXPECT_NEAR(std::abs(synthesize(one, quarter)[0] - cplx{0, 1}), 0.0, 1e-14);

  std::vector<Point> outside{{2.5, 0}};
  EXPECT_THROW(synthesize(one, outside), DomainError);
}

TEST(Synthesize, OffGridAgreesWithNodes2D) {
  Grid g(Axis{-1, 1, 8}, Axis{0, 3, 4});
  auto f = test::random_field(g, 3);
  auto nodes = synthesize(f);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < g.size(); ++i) pts.push_back(g.node(i));
  EXPECT_LT(test::max_abs_diff(nodes, synthesize(f, pts)), 1e-12);
}

TEST(Project, BandLimitedIsExact) {
  Grid g = Grid::line(-1, 1, 16);
  const Axis& ax = g.axis(0);
  for (std::size_t os : {1u, 2u, 4u, 7u}) {
    auto f = project_from_function([&](const Point& p) { return std::polar(1.0, ax.mu(2) * (p[0] - ax.a)); }, g, os);
    for (long l = -8; l < 8; ++l) EXPECT_NEAR(std::abs(f.mode(l) - (l == 2 ? 1.0 : 0.0)), 0.0, 1e-13);
  }
  auto zero = project_from_function([](const Point&) { return cplx{}; }, g);
  for (cplx c : zero.coeffs()) EXPECT_EQ(c, cplx{});
}

TEST(Project, SquareWaveAgainstAnalyticCoefficients) {
  Grid g = Grid::line(-1, 1, 16);
  const std::size_t os = 64;
  auto f = project_from_function(
      [](const Point& p) { return cplx{p[0] > 0 ? 1.0 : (p[0] < 0 ? -1.0 : 0.0), 0.0}; }, g, os);
  // (1/2) int_{-1}^{1} sign(x) e^{-i pi l (x+1)} dx = (-1)^l (-i)(1 - (-1)^l)/(pi l)
  for (long l = -8; l < 8; ++l) {
    cplx exact = 0.0;
    if (l % 2 != 0) exact = cplx{0.0, 2.0 / (pi * static_cast<double>(l))};
    EXPECT_NEAR(std::abs(f.mode(l) - exact), 0.0, 4.0 / static_cast<double>(os * 16)) << "l=" << l;
  }
}

TEST(FreePropagator, IdentityPeriodAndIsometry) {
  Grid g = Grid::line(0, 2 * pi, 32);
  auto u = test::random_field(g, 11);
  EXPECT_EQ(free_propagator(u, 0.0), u);

  SpectralField m(g);
  m.mode(3) = {0.3, -0.7};
  auto p = free_propagator(m, 2 * pi / 9.0);  // mu_3^2 t = 2 pi
  EXPECT_NEAR(std::abs(p.mode(3) - m.mode(3)), 0.0, 1e-14);

  auto v = free_propagator(u, 0.37);
  for (double alpha : {0.0, 1.0, 2.0}) {
    double a = sobolev_norm(u, alpha), b = sobolev_norm(v, alpha);
    EXPECT_LE(std::abs(a - b), 1e-13 * a) << "alpha=" << alpha;
  }
}

TEST(FreePropagator, Composes) {
  Grid g(Axis{-8, 8, 16}, Axis{-8, 8, 16});
  auto u = test::random_field(g, 5);
  auto a = free_propagator(free_propagator(u, 0.013), 0.021);
  auto b = free_propagator(u, 0.034);
  EXPECT_LT(test::max_abs_diff(a.coeffs(), b.coeffs()), 1e-13);
}

TEST(Phi, Values) {
  EXPECT_EQ(phi1(0.0), cplx(1.0, 0.0));
  EXPECT_NEAR(std::abs(phi1(cplx{0, pi}) - cplx{0, 2.0 / pi}), 0.0, 1e-15);
  EXPECT_EQ(phi_s(0.0), 1.0);
  EXPECT_NEAR(phi_s(pi), 0.0, 1e-16);
  EXPECT_NEAR(phi_s(pi / 2), 2.0 / pi, 1e-15);
  EXPECT_DOUBLE_EQ(phi_c(0.0), -1.0 / 3.0);
  EXPECT_NEAR(phi_c(pi), -1.0 / (pi * pi), 1e-15);
  EXPECT_EQ(phi_c(-1.7), phi_c(1.7));
}

TEST(Phi, ContinuousAcrossSeriesThreshold) {
  // No jump at the switch: values just inside and just outside agree.
  for (double ang : {0.0, pi / 2, 2.5}) {
    EXPECT_LT(std::abs(phi1(std::polar(kSeriesThreshold * (1 - 1e-12), ang)) -
                       phi1(std::polar(kSeriesThreshold * (1 + 1e-12), ang))),
              1e-10);
  }
  EXPECT_LT(std::abs(phi_s(kSeriesThreshold * (1 - 1e-12)) - phi_s(kSeriesThreshold * (1 + 1e-12))), 1e-10);
  EXPECT_LT(std::abs(phi_c(kSeriesThreshold * (1 - 1e-12)) - phi_c(kSeriesThreshold * (1 + 1e-12))), 1e-10);
  // Series branch against the closed forms evaluated at the same argument.
  for (double r = 0.5e-2; r < 2e-2; r += 1e-4) {
    for (double ang : {0.0, 0.7, pi / 2, 2.0, pi}) {
      cplx z = std::polar(r, ang);
      EXPECT_LT(std::abs(phi1(z) - (std::exp(z) - 1.0) / z), 1e-10);
    }
    double t = r;
    EXPECT_LT(std::abs(phi_s(t) - std::sin(t) / t), 1e-10);
    EXPECT_LT(std::abs(phi_c(t) - (t * std::cos(t) - std::sin(t)) / (t * t * t)), 1e-10);
  }
}

TEST(Phi, EvenAndBounded) {
  for (double t = 0.0; t < 60.0; t += 0.0137) {
    EXPECT_EQ(phi_s(t), phi_s(-t));
    EXPECT_EQ(phi_c(t), phi_c(-t));
    EXPECT_LE(std::abs(phi_s(t)), 1.0);
    EXPECT_LE(std::abs(phi_c(t)), 1.0 / 3.0 + 1e-15);
  }
}

TEST(Filter, ZeroModeAndContraction) {
  Grid g = Grid::line(-16, 16, 64);
  auto u = test::random_field(g, 21);
  auto s = apply_filter(u, Filter::phi_s, 0.1);
  auto c = apply_filter(u, Filter::phi_c, 0.1);
  auto e = apply_filter(u, Filter::phi1, 0.1);
  EXPECT_EQ(s.mode(0), u.mode(0));
  EXPECT_NEAR(std::abs(c.mode(0) - u.mode(0) * (-1.0 / 3.0)), 0.0, 1e-16);
  EXPECT_EQ(e.mode(0), u.mode(0));
  EXPECT_LE(sobolev_norm(s, 0), sobolev_norm(u, 0));
}

TEST(Filter, SincSmoothingBound) {
  Grid g = Grid::line(-16, 16, 1024);
  auto mu2 = g.mu_squared();
  for (double tau : {1e-1, 1e-2, 1e-3}) {
    double sup = 0.0;
    for (double m : mu2) sup = std::max(sup, (1.0 + m) * std::abs(phi_s(tau * m)));
    EXPECT_LE(tau * sup, 2.0);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto u = test::random_field(g, seed, 0.0);
      double lhs = sobolev_norm(apply_filter(u, Filter::phi_s, tau), 2.0);
      EXPECT_LE(lhs, 2.0 / tau * sobolev_norm(u, 0.0));
    }
  }
}

TEST(SobolevNorm, ClosedForms) {
  Grid g = Grid::line(-16, 16, 32);
  SpectralField one(g);
  one.mode(0) = 1.0;
  EXPECT_NEAR(sobolev_norm(one, 0.0), std::sqrt(32.0), 1e-14);

  Grid p = Grid::line(0, 2 * pi, 16);
  SpectralField m(p);
  m.mode(1) = 1.0;
  EXPECT_NEAR(sobolev_norm(m, 1.0), std::sqrt(4 * pi), 1e-13);

  SpectralField z(g);
  for (double a : {0.0, 0.5, 1.0, 2.0}) EXPECT_EQ(sobolev_norm(z, a), 0.0);
}

TEST(Parseval, MatchesOversampledQuadrature) {
  for (const Grid& g : {Grid::line(-16, 16, 32), Grid(Axis{-8, 8, 8}, Axis{-4, 4, 8})}) {
    auto u = test::random_field(g, 9);
    // |u|^2 has modes up to 2N; trapezoid on 4N points per axis is exact.
    Grid fine = g.refined(4);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < fine.size(); ++i) pts.push_back(fine.node(i));
    double quad = 0.0;
    for (cplx v : synthesize(u, pts)) quad += std::norm(v);
    quad *= fine.volume() / static_cast<double>(fine.size());
    double n0 = sobolev_norm(u, 0.0);
    EXPECT_LE(std::abs(n0 * n0 - quad), 1e-10 * quad);
  }
}

TEST(Resample, PaddingThenTruncationIsIdentity) {
  Grid g = Grid::line(-2, 2, 16);
  auto u = test::random_field(g, 4);
  auto up = resample(u, g.with_modes(64));
  EXPECT_EQ(resample(up, g), u);
  EXPECT_NEAR(sobolev_norm(up, 1.0), sobolev_norm(u, 1.0), 1e-14);
  EXPECT_NEAR(sobolev_distance(u, up, 1.0), 0.0, 1e-15);
  EXPECT_THROW(resample(u, Grid::line(-2, 3, 16)), DimensionError);
}

TEST(Snapshot, BinaryLayoutAndRoundTrip) {
  Grid g(Axis{-8, 8, 8}, Axis{-4, 4, 4});
  auto u = test::random_field(g, 12);
  std::string bytes = encode_snapshot(u);
  ASSERT_EQ(bytes.size(), 4u + 4 + 4 + 2 * 24 + g.size() * 16);
  EXPECT_EQ(bytes.substr(0, 4), "SEWI");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1);  // version, little-endian
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 2);  // dims
  double a0;
  std::memcpy(&a0, bytes.data() + 12, 8);
  EXPECT_EQ(a0, -8.0);
  EXPECT_EQ(decode_snapshot(bytes), u);

  auto path = std::filesystem::temp_directory_path() / "sewi_snapshot_test.sewi";
  write_snapshot(path, u);
  EXPECT_EQ(read_snapshot(path), u);
  std::filesystem::remove(path);
}

TEST(Snapshot, RejectsCorruptInput) {
  auto u = test::random_field(Grid::line(0, 1, 8), 1);
  std::string bytes = encode_snapshot(u);
  EXPECT_THROW(decode_snapshot("SEWX" + bytes.substr(4)), IoError);
  EXPECT_THROW(decode_snapshot(bytes.substr(0, bytes.size() - 3)), IoError);
  std::string odd = bytes;
  odd[28] = 7;  // N = 7
  EXPECT_THROW(decode_snapshot(odd), IoError);
}

TEST(Snapshot, DensityCsv) {
  Grid g = Grid::line(0, 1, 8);
  SpectralField u(g);
  u.mode(0) = {0.0, 2.0};
  auto path = std::filesystem::temp_directory_path() / "sewi_density_test.csv";
  write_density_csv(path, u);
  std::ifstream is(path);
  std::string header, line;
  std::getline(is, header);
  EXPECT_EQ(header, "x,re,im,density");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_NE(line.find("4.0000000000000000e+00"), std::string::npos);
  }
  EXPECT_EQ(rows, 8);
  std::filesystem::remove(path);
}
