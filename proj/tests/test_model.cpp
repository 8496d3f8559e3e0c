#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sewi/model.hpp"
#include "test_util.hpp"

using namespace sewi;
using std::numbers::pi;

TEST(Nonlinearity, ValidatesAndVanishesAtZero) {
  EXPECT_THROW(Nonlinearity(1.0, 0.0), ConfigError);
  EXPECT_THROW(Nonlinearity(1.0, -0.5), ConfigError);
  for (double s : {0.1, 0.5, 1.0, 1.1}) {
    Nonlinearity nl(-2.0, s);
    EXPECT_EQ(nl.f(0.0), 0.0);
    EXPECT_EQ(nl.F(0.0), 0.0);
    EXPECT_EQ(nl.G(cplx{}), cplx{});
    EXPECT_NEAR(nl.f(2.0), -2.0 * std::pow(2.0, s), 1e-14);
    EXPECT_NEAR(nl.F(2.0), -2.0 * std::pow(2.0, s + 1) / (s + 1), 1e-14);
  }
}

TEST(ApplyB, Examples) {
  std::vector<double> v0(4, 0.0), v5(4, 5.0);
  std::vector<cplx> two(4, 2.0), onei(4, cplx{1, 1});
  for (cplx b : apply_B(two, v0, Nonlinearity(1.0, 1.0))) EXPECT_EQ(b, cplx(8.0, 0.0));
  for (cplx b : apply_B(onei, v5, Nonlinearity(0.0, 1.0))) EXPECT_EQ(b, cplx(5.0, 5.0));
  std::vector<cplx> u{1.0, 0.0, cplx{0, 2}, 0.0};
  auto out = apply_B(u, v0, Nonlinearity(1.0, 0.1));
  EXPECT_EQ(out[1], cplx{});
  EXPECT_EQ(out[3], cplx{});
  for (cplx c : out) EXPECT_TRUE(std::isfinite(c.real()) && std::isfinite(c.imag()));
  std::vector<double> short_v(3);
  EXPECT_THROW(apply_B(u, short_v, Nonlinearity(1.0, 1.0)), DimensionError);
}

TEST(ApplyB, ConstantShiftOfPotential) {
  auto u = test::random_samples(64, 1);
  std::vector<double> V(64), W(64);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-3, 3);
  const double alpha = 1.75;
  for (std::size_t i = 0; i < V.size(); ++i) {
    V[i] = d(rng);
    W[i] = V[i] + alpha;
  }
  Nonlinearity nl(0.7, 1.1);
  auto a = apply_B(u, V, nl);
  auto b = apply_B(u, W, nl);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_LT(std::abs(b[i] - (a[i] + alpha * u[i])), 1e-14);
}

TEST(ApplyB, OddInOddOut) {
  Grid g = Grid::line(-16, 16, 256);
  auto u = sample(odd_power_gaussian(2.51), g);
  auto V = Potential::h2bump().sample(g);
  auto out = apply_B(u, V, Nonlinearity(1.0, 1.1));
  const std::size_t n = g.size();
  for (std::size_t j = 1; j < n / 2; ++j) EXPECT_LT(std::abs(out[j] + out[n - j]), 1e-12);
}

TEST(GateauxDB, ClosedFormCases) {
  std::vector<double> V{2.0, 2.0, -1.0};
  std::vector<cplx> v{cplx{0.3, 0.1}, cplx{-1, 2}, 0.0};
  std::vector<cplx> w{cplx{1, 1}, cplx{0.5, -2}, cplx{3, 0}};
  auto lin = gateaux_dB(v, w, V, Nonlinearity(0.0, 1.0));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(lin[i], V[i] * w[i]);

  std::vector<double> z(1, 0.0);
  std::vector<cplx> one(1, 1.0);
  Nonlinearity cubic(1.0, 1.0);
  EXPECT_NEAR(std::abs(gateaux_dB(one, one, z, cubic)[0] - 3.0), 0.0, 1e-15);
  const double eps = 1e-6;
  std::vector<cplx> shifted{1.0 + eps};
  double fd = (apply_B(shifted, z, cubic)[0] - apply_B(one, z, cubic)[0]).real() / eps;
  EXPECT_NEAR(fd, 3.0, 1e-5);

  auto at_zero = gateaux_dB(v, w, V, Nonlinearity(1.3, 0.3));
  EXPECT_EQ(at_zero[2], V[2] * w[2]);
  EXPECT_THROW(gateaux_dB(v, one, V, cubic), DimensionError);
}

TEST(GateauxDB, MatchesFiniteDifferences) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mag(0.5, 1.5), ph(0, 2 * pi), vd(-5, 5);
  const std::size_t n = 200;
  std::vector<cplx> v(n), w(n);
  std::vector<double> V(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = std::polar(mag(rng), ph(rng));
    w[i] = std::polar(mag(rng), ph(rng));
    V[i] = vd(rng);
  }
  for (auto nl : {Nonlinearity(1.0, 1.1), Nonlinearity(-1.0, 0.5), Nonlinearity(2.0, 1.0)}) {
    auto d = gateaux_dB(v, w, V, nl);
    auto base = apply_B(v, V, nl);
    for (double eps : {1e-4, 1e-6}) {
      std::vector<cplx> ve(n);
      for (std::size_t i = 0; i < n; ++i) ve[i] = v[i] + eps * w[i];
      auto pert = apply_B(ve, V, nl);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cplx fd = (pert[i] - base[i]) / eps;
        num += std::norm(fd - d[i]);
        den += std::norm(d[i]);
      }
      EXPECT_LE(std::sqrt(num / den), 10 * eps) << "eps=" << eps;
    }
  }
}

TEST(Mass, Examples) {
  Grid g = Grid::line(-16, 16, 256);
  SpectralField one(g);
  one.mode(0) = 1.0;
  EXPECT_NEAR(mass(one), 32.0, 1e-12);
  EXPECT_EQ(mass(SpectralField(g)), 0.0);
  // int x^2 e^{-x^2} dx = sqrt(pi)/2
  auto psi = project_from_function(gaussian_odd(), g);
  EXPECT_NEAR(mass(psi), std::sqrt(pi) / 2.0, 1e-10);
}

TEST(Energy, Examples) {
  Grid g = Grid::line(-16, 16, 64);
  SpectralField c(g);
  c.mode(0) = cplx{0.4, -1.2};
  EXPECT_EQ(energy(c, Potential::zero(), Nonlinearity(0.0, 1.0)), 0.0);

  Grid p = Grid::line(0, 2 * pi, 16);
  SpectralField wave(p);
  wave.mode(1) = 1.0;
  auto parts = energy_parts(wave, Potential::zero(), Nonlinearity(0.0, 1.0));
  EXPECT_NEAR(parts.kinetic, 2 * pi, 1e-13);
  EXPECT_EQ(parts.potential, 0.0);

  Grid unit = Grid::line(0, 1, 8);
  SpectralField u(unit);
  u.mode(0) = 1.0;
  EXPECT_NEAR(energy(u, Potential::constant(3.0), Nonlinearity(0.0, 1.0)), 3.0, 1e-14);
}

TEST(Energy, InteractionMatchesQuadrature) {
  Grid g = Grid::line(-16, 16, 128);
  auto u = project_from_function(gaussian_odd(), g);
  Nonlinearity nl(1.0, 1.0);
  // int F(|u|^2) = (1/2) int x^4 e^{-2x^2} dx = (1/2) * 3 sqrt(pi/2) / 16
  double exact = 0.5 * 3.0 * std::sqrt(pi / 2.0) / 16.0;
  EXPECT_NEAR(energy_parts(u, Potential::zero(), nl).interaction, exact, 1e-10);
}

TEST(Energy, FreeFlightInvariance) {
  Grid g = Grid::line(-16, 16, 128);
  auto u = test::random_field(g, 8, 3.0);
  Nonlinearity lin(0.0, 1.0);
  for (double t : {0.1, 1.3, 7.0}) {
    auto v = free_propagator(u, t);
    EXPECT_NEAR(mass(v), mass(u), 1e-13 * mass(u));
    EXPECT_NEAR(energy(v, Potential::zero(), lin), energy(u, Potential::zero(), lin), 1e-12 * energy(u, Potential::zero(), lin));
  }
}

TEST(Catalogue, Potentials) {
  auto low1d = make_potential({.key = "box1d"});
  EXPECT_EQ(low1d({5.0, 0}), 10.0);
  EXPECT_EQ(low1d({-5.0, 0}), 10.0);
  EXPECT_EQ(low1d({4.0, 0}), 10.0);
  EXPECT_EQ(low1d({0.0, 0}), 0.0);
  EXPECT_EQ(low1d.regularity(), Regularity::Linf);

  auto low2d = make_potential({.key = "box2d"});
  EXPECT_EQ(low2d({0.0, 0.0}), 10.0);
  EXPECT_EQ(low2d({2.0, -2.0}), 10.0);
  EXPECT_EQ(low2d({3.0, 0.0}), 0.0);
  EXPECT_EQ(low2d({0.0, 2.5}), 0.0);
  for (double v : low2d.sample(Grid::square(-8, 8, 32))) EXPECT_TRUE(v == 0.0 || v == 10.0);

  auto bump = make_potential({.key = "h2bump"});
  EXPECT_NEAR(bump({0.0, 0}), -std::pow(0.25, 1.51), 1e-15);
  EXPECT_EQ(bump({2.0, 0}), 0.0);
  double x = 9.0;
  EXPECT_NEAR(bump({x, 0}), std::pow((x * x - 4) / 16, 1.51) * std::pow(1 - x * x / 256, 2), 1e-14);
  EXPECT_EQ(bump({16.0, 0}), 0.0);
  EXPECT_EQ(bump({-x, 0}), bump({x, 0}));

  EXPECT_EQ(make_potential({.key = "constant", .value = 2.5})({1, 1}), 2.5);
  EXPECT_THROW(make_potential({.key = "harmonic"}), ConfigError);
}

TEST(Catalogue, InitialData) {
  auto soliton = make_initial_datum({.key = "benchmark_soliton"});
  EXPECT_NEAR(soliton({0.0, 0}).real(), -216.0 / 37.0, 1e-13);
  for (double x : {-16.0, -10.0, 10.0, 16.0}) EXPECT_TRUE(std::isfinite(soliton({x, 0}).real()));

  for (const auto& key : {"odd_power_gaussian", "gaussian_odd"}) {
    auto f = make_initial_datum({.key = key, .power = 0.51});
    for (double x : {0.1, 0.7, 1.9, 3.3})
      for (double y : {0.0, -0.4, 1.2}) EXPECT_EQ(f({-x, y}), -f({x, y})) << key;
  }
  auto good = odd_power_gaussian(2.51);
  EXPECT_NEAR(good({1.5, 0}).real(), 1.5 * std::pow(1.5, 2.51) * std::exp(-1.125), 1e-15);
  auto two_d = odd_power_gaussian(0.51);
  EXPECT_NEAR(two_d({1.0, 1.0}).real(), std::exp(-1.0), 1e-15);
  EXPECT_THROW(make_initial_datum({.key = "vortex"}), ConfigError);
}
