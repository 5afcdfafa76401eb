#include <cmath>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "tomokit/catalog.hpp"
#include "tomokit/transforms.hpp"

using namespace tomokit;
using namespace tomokit::test;

namespace {

const State& ground() {
  static const State s = State::resolve(StateSpec::parse("ground"));
  return s;
}

GridSpec odd_phase_grid() {
  GridSpec g = default_grid();
  g.n_q = g.n_p = 257;  // origin on the grid
  return g;
}

}  // namespace

TEST(Radon, GroundGaussian) {
  const GridSpec g = default_grid();
  const OpticalTomogramGrid w = radon_optical(ground().wigner_grid(g), g);
  double err = 0.0;
  for (std::size_t j = 0; j < g.n_theta; ++j)
    for (std::size_t i = 0; i < g.n_x; ++i)
      err = std::max(err, std::abs(w(j, i) - kInvSqrtPi * std::exp(-g.x(i) * g.x(i))));
  EXPECT_LT(err, 1e-6);
}

TEST(Radon, DisplacedGaussianShifts) {
  const GridSpec g = default_grid();
  const State st = State::resolve(StateSpec::parse("coherent:1,0"));
  const OpticalTomogramGrid w = radon_optical(st.wigner_grid(g), g);
  double err = 0.0;
  for (std::size_t j = 0; j < g.n_theta; ++j) {
    for (std::size_t i = 0; i < g.n_x; ++i) {
      const double d = g.x(i) - std::cos(g.theta(j));
      err = std::max(err, std::abs(w(j, i) - kInvSqrtPi * std::exp(-d * d)));
    }
  }
  EXPECT_LT(err, 1e-6);
}

TEST(Radon, ZeroPhaseRowIsMomentumMarginal) {
  GridSpec g = default_grid();
  g.n_q = g.n_x;  // q nodes coincide with X nodes
  const State st = State::resolve(StateSpec::parse("squeezed:0.4"));
  const WignerGrid W = st.wigner_grid(g);
  const OpticalTomogramGrid w = radon_optical(W, g);
  for (std::size_t i = 0; i < g.n_x; i += 7) {
    const std::span<const double> row(W.values().data() + i * g.n_p, g.n_p);
    EXPECT_NEAR(w(0, i), trapezoid(row, g.dp()), 1e-9) << "X=" << g.x(i);
  }
}

TEST(Radon, PreservesMassAndParity) {
  const GridSpec g = default_grid();
  for (const char* name : {"fock2", "coherent:0.7,-0.9", "W1-quartic"}) {
    const WignerGrid W = State::resolve(StateSpec::parse(name)).wigner_grid(g);
    const OpticalTomogramGrid w = radon_optical(W, g);
    for (std::size_t j = 0; j < g.n_theta; ++j) EXPECT_NEAR(w.row_mass(j), W.mass(), 1e-6) << name;
    for (double x : {0.3, 1.25, 2.0}) {
      for (double th : {0.2, 1.0, 2.5}) {
        EXPECT_NEAR(radon_line(W, -x, th + kPi, g.dx()), radon_line(W, x, th, g.dx()), 1e-10) << name;
      }
    }
  }
}

TEST(Symplectic, PolarRelationOnGroundGrid) {
  const GridSpec g = default_grid();
  auto grid = std::make_shared<const OpticalTomogramGrid>(ground().optical_grid(g));
  const SymplecticView m = optical_to_symplectic(grid);
  EXPECT_NEAR(m(0.0, 0.0, 2.0), 0.5 * kInvSqrtPi, 1e-10);
  for (std::size_t i : {100u, 140u, 171u}) EXPECT_NEAR(m(g.x(i), 1.0, 0.0), (*grid)(0, i), 1e-13);
  for (auto [x, mu, nu] : {std::array{0.4, 0.3, -1.2}, std::array{-1.0, -0.8, 0.5}}) {
    EXPECT_NEAR(m(-x, -mu, -nu), m(x, mu, nu), 1e-14);
  }
  EXPECT_THROW(m(0.0, 0.0, 0.0), Error);
}

TEST(Symplectic, HomogeneityIsExact) {
  const GridSpec g = default_grid();
  const State st = State::resolve(StateSpec::parse("coherent:0.6,0.2"));
  const SymplecticView m = optical_to_symplectic(std::make_shared<const OpticalTomogramGrid>(st.optical_grid(g)));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double x = u(rng), mu = u(rng), nu = u(rng);
    if (std::hypot(mu, nu) < 0.1) continue;
    for (double l : {-2.0, -0.5, 0.5, 3.0}) {
      EXPECT_NEAR(m(l * x, l * mu, l * nu) * std::abs(l), m(x, mu, nu), 1e-12);
    }
  }
}

TEST(Symplectic, EulerRelationOnSmoothEntries) {
  const double h = 1e-4;
  for (const char* name : {"ground", "coherent:0.8,-0.4", "M1", "squeezed"}) {
    const SymplecticView m = State::resolve(StateSpec::parse(name)).symplectic();
    for (auto [x, mu, nu] : {std::array{0.3, 0.9, 0.5}, std::array{-0.7, -0.4, 1.1}, std::array{1.2, 1.5, -0.6}}) {
      const double dx = (m(x + h, mu, nu) - m(x - h, mu, nu)) / (2 * h);
      const double dmu = (m(x, mu + h, nu) - m(x, mu - h, nu)) / (2 * h);
      const double dnu = (m(x, mu, nu + h) - m(x, mu, nu - h)) / (2 * h);
      EXPECT_LT(std::abs(m(x, mu, nu) + x * dx + mu * dmu + nu * dnu), 1e-6) << name;
    }
  }
}

TEST(Symplectic, RestrictionRoundTrip) {
  const GridSpec g = default_grid();
  auto grid = std::make_shared<const OpticalTomogramGrid>(
      State::resolve(StateSpec::parse("fock1")).optical_grid(g));
  const OpticalTomogramGrid back = symplectic_to_optical(optical_to_symplectic(grid), g);
  EXPECT_LT(max_abs_diff(back.values(), grid->values()), 1e-12);
}

TEST(Symplectic, M1RestrictsToW1AndF1ToGround) {
  const State m1 = State::resolve(StateSpec::parse("M1"));
  const State w1 = State::resolve(StateSpec::parse("w1"));
  const State f1 = State::resolve(StateSpec::parse("f1"));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), ut(0.0, kPi);
  for (int k = 0; k < 20; ++k) {
    const double x = ux(rng), th = ut(rng);
    EXPECT_NEAR(m1.symplectic().optical(x, th), w1.optical()(x, th), 1e-12);
    EXPECT_NEAR(f1.symplectic().optical(x, th), kInvSqrtPi * std::exp(-x * x), 1e-12);
  }
}

TEST(InverseRadon, GroundOrigin) {
  const GridSpec g = odd_phase_grid();
  const Reconstruction r = inverse_radon_optical(ground().optical_grid(g), g);
  EXPECT_NEAR(r.grid(128, 128), 1.0 / kPi, 1e-3);
  EXPECT_NEAR(r.grid.mass(), 1.0, 1e-6);
  EXPECT_FALSE(r.boundary_warning);
}

TEST(InverseRadon, W1QuarticAtOrigin) {
  const GridSpec g = odd_phase_grid();
  const Reconstruction r = inverse_radon_optical(State::resolve(StateSpec::parse("w1")).optical_grid(g), g);
  EXPECT_NEAR(r.grid(128, 128), -1.0 / (4.0 * kPi), 1e-3);
}

TEST(InverseRadon, RoundTripFockStates) {
  const GridSpec g = default_grid();
  for (int n = 0; n <= 3; ++n) {
    const OpticalTomogramGrid w = State::resolve(StateSpec::parse("fock" + std::to_string(n))).optical_grid(g);
    const OpticalTomogramGrid again = radon_optical(inverse_radon_optical(w, g).grid, g);
    EXPECT_LT(relative_l2(again.values(), w.values()), 1e-2) << "n=" << n;
  }
}

TEST(InverseRadon, FlagsNonDecayingRows) {
  GridSpec g = default_grid();
  const OpticalTomogramGrid flat = OpticalTomogramGrid::sample(g, [](double, double) { return 1.0 / 14.0; });
  EXPECT_TRUE(inverse_radon_optical(flat, g).boundary_warning);
}

TEST(Characteristic, Examples) {
  const SymplecticView f1 = State::resolve(StateSpec::parse("f1")).symplectic();
  EXPECT_NEAR(std::abs(characteristic_value(f1, 1.0, 1.0) - std::exp(-0.5)), 0.0, 1e-10);
  for (auto [mu, nu] : {std::pair{0.5, -1.0}, std::pair{2.0, 1.5}, std::pair{-3.0, 0.2}}) {
    const auto v = characteristic_value(ground().symplectic(), mu, nu);
    EXPECT_NEAR(v.real(), std::exp(-(mu * mu + nu * nu) / 4), 1e-10);
    EXPECT_NEAR(v.imag(), 0.0, 1e-12);
  }
  const std::pair<double, double> pts[] = {{0.0, 0.0}, {0.4, 0.1}};
  const CharacteristicSamples s = characteristic_function(ground().symplectic(), pts);
  EXPECT_TRUE(s[0].limit);
  EXPECT_EQ(s[0].value, std::complex<double>(1.0, 0.0));
  EXPECT_FALSE(s[1].limit);
}

TEST(Characteristic, ConjugateSymmetry) {
  const SymplecticView m = State::resolve(StateSpec::parse("coherent:0.9,-0.5")).symplectic();
  for (auto [mu, nu] : {std::pair{0.7, 0.3}, std::pair{-1.4, 2.0}}) {
    const auto a = characteristic_value(m, mu, nu);
    const auto b = characteristic_value(m, -mu, -nu);
    EXPECT_LT(std::abs(a - std::conj(b)), 1e-12);
  }
}

TEST(FourierInverse, GaussianPair) {
  GridSpec g = default_grid();
  g.n_q = g.n_p = 61;
  g.q_min = g.p_min = -4.0;
  g.q_max = g.p_max = 4.0;
  CharacteristicGrid phi;
  phi.values.resize(phi.n_mu * phi.n_nu);
  for (std::size_t i = 0; i < phi.n_mu; ++i)
    for (std::size_t j = 0; j < phi.n_nu; ++j)
      phi.values[i * phi.n_nu + j] = std::exp(-(phi.mu(i) * phi.mu(i) + phi.nu(j) * phi.nu(j)) / 4);
  const FourierReconstruction r = wigner_from_characteristic(phi, g);
  double err = 0.0;
  for (std::size_t i = 0; i < g.n_q; ++i)
    for (std::size_t j = 0; j < g.n_p; ++j)
      err = std::max(err, std::abs(r.grid(i, j) - std::exp(-g.q(i) * g.q(i) - g.p(j) * g.p(j)) / kPi));
  EXPECT_LT(err, 1e-6);
  EXPECT_FALSE(r.decay_warning);
  EXPECT_NEAR(r.grid.mass(), 1.0, 1e-6);
}

TEST(FourierInverse, FockOneOriginIsParityValue) {
  GridSpec g = default_grid();
  g.n_q = g.n_p = 41;
  g.q_min = g.p_min = -4.0;
  g.q_max = g.p_max = 4.0;
  const State st = State::resolve(StateSpec::parse("fock1"));
  const CharacteristicGrid phi = sample_characteristic(st.symplectic(), CharacteristicGrid{});
  const FourierReconstruction r = wigner_from_characteristic(phi, g);
  // W(0,0) = (1/pi) sum (-1)^n rho_nn
  EXPECT_NEAR(r.grid(20, 20), -1.0 / kPi, 1e-3);
  EXPECT_NEAR(r.grid.mass(), 1.0, 1e-3);
}
