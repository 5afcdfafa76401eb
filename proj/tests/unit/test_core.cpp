#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "tomokit/catalog.hpp"
#include "tomokit/fock.hpp"
#include "tomokit/grid_io.hpp"
#include "tomokit/hermite.hpp"

using namespace tomokit;
using namespace tomokit::test;

namespace {

// H_n(x) = n! sum_m (-1)^m (2x)^{n-2m} / (m! (n-2m)!), in long double.
// Returns the value and the sum of absolute terms (its conditioning scale).
std::pair<long double, long double> hermite_explicit(int n, long double x) {
  long double sum = 0.0L, scale = 0.0L;
  for (int m = 0; 2 * m <= n; ++m) {
    long double t = std::tgammal(n + 1.0L) / (std::tgammal(m + 1.0L) * std::tgammal(n - 2 * m + 1.0L));
    t *= std::pow(2.0L * x, static_cast<long double>(n - 2 * m));
    if (m % 2) t = -t;
    sum += t;
    scale += std::fabs(t);
  }
  return {sum, scale};
}

}  // namespace

TEST(Hermite, SmallCases) {
  EXPECT_EQ(hermite_values(0, 3.7), std::vector<double>{1.0});
  EXPECT_EQ(hermite_values(2, 1.0), (std::vector<double>{1.0, 2.0, 2.0}));
  const auto h = hermite_values(3, 2.0);
  ASSERT_EQ(h.size(), 4u);
  EXPECT_DOUBLE_EQ(h[3], 40.0);
}

TEST(Hermite, MatchesExplicitSumUpTo30) {
  for (double x : {-6.0, -4.5, -2.2, -0.7, 0.0, 0.3, 1.9, 3.3, 5.1, 6.0}) {
    const auto h = hermite_values(30, x);
    for (int n = 0; n <= 30; ++n) {
      const auto [ref, scale] = hermite_explicit(n, x);
      // near a root the relative error is meaningless; skip values that
      // cancel below 1e-6 of the term magnitudes
      if (std::fabs(ref) <= 1e-6L * scale) continue;
      EXPECT_LT(std::fabs((h[n] - ref) / ref), 1e-10L) << "n=" << n << " x=" << x;
    }
  }
}

TEST(Hermite, RejectsBadInputAndOverflow) {
  EXPECT_THROW(hermite_values(-1, 0.0), std::invalid_argument);
  EXPECT_THROW(hermite_values(3, NAN), std::invalid_argument);
  EXPECT_THROW(hermite_values(300, 1e3), std::overflow_error);
  const auto psi = hermite_functions(80, 10.0);
  for (double v : psi) EXPECT_TRUE(std::isfinite(v));
}

TEST(Hermite, FunctionsMatchScaledPolynomials) {
  for (double x : {-2.5, 0.4, 1.7}) {
    const auto h = hermite_values(12, x);
    const auto psi = hermite_functions(12, x);
    for (int n = 0; n <= 12; ++n) {
      const double ref = h[n] * std::exp(-0.5 * x * x) /
                         (std::pow(kPi, 0.25) * std::pow(2.0, 0.5 * n) * std::sqrt(std::tgamma(n + 1.0)));
      EXPECT_NEAR(psi[n], ref, 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST(FockEval, OpticalExamples) {
  const FockMatrix ground = FockMatrix::diagonal({1.0});
  for (double th : {0.0, 0.7, 2.9}) EXPECT_NEAR(fock_optical_eval(ground, 0.0, th), 0.564190, 1e-6);
  const FockMatrix one = FockMatrix::diagonal({0.0, 1.0});
  EXPECT_NEAR(fock_optical_eval(one, 1.0, 1.3), 0.415107, 1e-6);
  Eigen::MatrixXcd half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  EXPECT_NEAR(fock_optical_eval(FockMatrix(half), 0.0, 0.0), 0.282095, 1e-6);
}

TEST(FockEval, RejectsNonHermitian) {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, 0.3, 0.0, 0.0;
  EXPECT_THROW(FockMatrix{m}, Error);
  EXPECT_THROW(FockMatrix(Eigen::MatrixXcd(2, 3)), Error);
}

TEST(FockEval, SymplecticExamples) {
  const FockMatrix ground = FockMatrix::diagonal({1.0});
  EXPECT_NEAR(fock_symplectic_eval(ground, 0.0, 1.0, 0.0), kInvSqrtPi, 1e-14);
  EXPECT_NEAR(fock_symplectic_eval(ground, 0.0, 2.0, 0.0), 0.5 * kInvSqrtPi, 1e-14);
  EXPECT_THROW(fock_symplectic_eval(ground, 0.0, 0.0, 0.0), Error);

  std::mt19937_64 rng(7);
  const FockMatrix rho = random_hermitian(rng, 5);
  for (auto [x, mu, nu] : {std::array{0.3, 0.8, -0.4}, std::array{-1.1, -0.2, 1.5}}) {
    const double base = fock_symplectic_eval(rho, x, mu, nu);
    EXPECT_NEAR(fock_symplectic_eval(rho, 3 * x, 3 * mu, 3 * nu), base / 3.0, 1e-14);
  }
}

TEST(FockEval, ParityNormalizationAndCircleRestriction) {
  std::mt19937_64 rng(11);
  const GridSpec g = default_grid();
  for (int trial = 0; trial < 5; ++trial) {
    const FockMatrix rho = random_hermitian(rng, 6);
    for (double th : {0.0, 0.4, 1.9, 3.0}) {
      std::vector<double> row(g.n_x);
      for (std::size_t i = 0; i < g.n_x; ++i) row[i] = fock_optical_eval(rho, g.x(i), th);
      EXPECT_NEAR(trapezoid(row, g.dx()), 1.0, 1e-8);
      for (double x : {0.2, 1.1, 2.7}) {
        EXPECT_NEAR(fock_optical_eval(rho, -x, th + kPi), fock_optical_eval(rho, x, th), 1e-12);
        EXPECT_NEAR(fock_symplectic_eval(rho, x, std::cos(th), std::sin(th)), fock_optical_eval(rho, x, th),
                    1e-12);
      }
    }
  }
}

TEST(FockEval, StateWignerMatchesGridConstruction) {
  GridSpec g = default_grid();
  g.n_q = g.n_p = 41;
  g.q_min = g.p_min = -4.0;
  g.q_max = g.p_max = 4.0;
  const WignerGrid w = wigner_grid_from_fock(FockMatrix::diagonal({0.0, 0.0, 1.0}), g);
  for (std::size_t i = 0; i < g.n_q; i += 5)
    for (std::size_t j = 0; j < g.n_p; j += 5)
      EXPECT_NEAR(w(i, j), fock_state_wigner(2, g.q(i), g.p(j)), 1e-10);
  EXPECT_NEAR(fock_state_wigner(1, 0.0, 0.0), -1.0 / kPi, 1e-15);
}

TEST(Catalog, ClosedFormExamples) {
  const double origin3[] = {0.0, 0.0, 0.0};
  EXPECT_NEAR(catalog_eval(StateSpec::parse("f1"), Representation::symplectic, origin3), std::exp(0.25) / std::sqrt(kPi), 1e-12);
  const double xt[] = {0.0, 1.234};
  EXPECT_NEAR(catalog_eval(StateSpec::parse("w1"), Representation::optical, xt), 0.070524, 1e-6);
  const double qp[] = {0.0, 0.0};
  EXPECT_NEAR(catalog_eval(StateSpec::parse("W1-quartic"), Representation::wigner, qp), -0.079577, 1e-6);
}

TEST(Catalog, Errors) {
  const double qp[] = {0.0, 0.0};
  EXPECT_THROW(catalog_eval(StateSpec::parse("M1"), Representation::wigner, qp), Error);
  EXPECT_THROW(StateSpec::parse("nonsense"), Error);
  EXPECT_THROW(StateSpec::parse("fock99"), Error);
  EXPECT_THROW(catalog_eval(StateSpec::parse("grid:/tmp/x.json"), Representation::optical, qp), Error);
  const double short_point[] = {0.0};
  EXPECT_THROW(catalog_eval(StateSpec::parse("ground"), Representation::optical, short_point), Error);
}

TEST(Catalog, SpecRoundTrip) {
  for (const char* text : {"ground", "fock3", "fock:4", "coherent", "coherent:0.5,-1", "squeezed:0.3",
                           "example-cos3", "f1", "w1", "W1", "W1-quartic", "M1"}) {
    const StateSpec s = StateSpec::parse(text);
    EXPECT_EQ(StateSpec::parse(s.str()).str(), s.str()) << text;
  }
  EXPECT_EQ(StateSpec::parse("fock:4").str(), "fock4");
  EXPECT_EQ(StateSpec::parse("W1").str(), "W1-quartic");
}

TEST(Catalog, EntriesCarryDiagnoses) {
  int counterexamples = 0;
  for (const CatalogEntry& e : catalog_entries()) {
    if (e.genuine) {
      EXPECT_TRUE(e.diagnosis.empty()) << e.syntax;
    } else {
      EXPECT_FALSE(e.diagnosis.empty()) << e.syntax;
      ++counterexamples;
    }
  }
  EXPECT_EQ(counterexamples, 5);
}

TEST(Catalog, StateRepresentationsAgree) {
  const GridSpec g = default_grid();
  for (const char* name : {"ground", "fock2", "coherent:0.5,-0.3", "squeezed", "w1"}) {
    const State st = State::resolve(StateSpec::parse(name));
    const auto rho = st.fock(60);  // squeezed amplitudes fall off only as tanh(r)^k
    ASSERT_TRUE(rho.has_value()) << name;
    for (double x : {-1.3, 0.0, 0.8}) {
      for (double th : {0.0, 0.9, 2.2}) {
        EXPECT_NEAR(st.optical()(x, th), fock_optical_eval(*rho, x, th), 1e-10) << name;
        EXPECT_NEAR(st.symplectic()(2 * x, 2 * std::cos(th), 2 * std::sin(th)), st.optical()(x, th) / 2, 1e-12);
      }
    }
    EXPECT_NEAR(st.optical_grid(g).row_mass(5), 1.0, 1e-8) << name;
  }
}

TEST(GridSpecTest, Invariants) {
  GridSpec g = default_grid();
  EXPECT_NO_THROW(g.validate_tomogram());
  EXPECT_DOUBLE_EQ(g.x((g.n_x - 1) / 2), 0.0);
  EXPECT_DOUBLE_EQ(g.theta(16), kPi / 4);
  g.n_x = 280;
  EXPECT_THROW(g.validate_tomogram(), Error);
  g = default_grid();
  g.x_min = -6.0;
  EXPECT_THROW(g.validate_tomogram(), Error);
  EXPECT_THROW(OpticalTomogramGrid(default_grid(), std::vector<double>(5)), Error);
  std::vector<double> bad(default_grid().n_x * default_grid().n_theta, 0.0);
  bad[3] = NAN;
  EXPECT_THROW(OpticalTomogramGrid(default_grid(), bad), Error);
}

TEST(GridIo, RoundTripIsExact) {
  const auto dir = std::filesystem::temp_directory_path() / "tomokit_test_io";
  std::filesystem::create_directories(dir);
  GridSpec g = default_grid();
  g.n_x = 41;
  g.n_theta = 8;
  g.n_q = 30;
  g.n_p = 20;
  g.p_min = -5.0;
  const State st = State::resolve(StateSpec::parse("coherent:0.3,0.7"));
  const OpticalTomogramGrid w = st.optical_grid(g);
  write_grid(w, dir / "opt.json");
  EXPECT_EQ(read_grid_kind(dir / "opt.json"), GridKind::optical);
  const OpticalTomogramGrid back = read_optical_grid(dir / "opt.json");
  EXPECT_EQ(back.n_x(), w.n_x());
  EXPECT_EQ(back.n_theta(), w.n_theta());
  for (std::size_t k = 0; k < w.values().size(); ++k) EXPECT_EQ(back.values()[k], w.values()[k]);

  const WignerGrid W = st.wigner_grid(g);
  write_grid(W, dir / "wig.json");
  EXPECT_EQ(read_grid_kind(dir / "wig.json"), GridKind::wigner);
  const WignerGrid wb = read_wigner_grid(dir / "wig.json");
  EXPECT_EQ(wb.spec().p_min, -5.0);
  for (std::size_t k = 0; k < W.values().size(); ++k) EXPECT_EQ(wb.values()[k], W.values()[k]);

  // external grid states resolve through the manifest
  const State ext = State::resolve(StateSpec::parse("grid:" + (dir / "opt.json").string()));
  EXPECT_FALSE(ext.genuine());
  EXPECT_NEAR(ext.optical()(0.35, g.theta(3)), st.optical()(0.35, g.theta(3)), 1e-6);
}

TEST(GridIo, RejectsMalformedFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "tomokit_test_io_bad";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "m.json") << R"({"kind": "optical", "x_min": -1, "x_max": 1, "n_x": 3, "n_theta": 2, "data": "m.csv"})";
  std::ofstream(dir / "m.csv") << "0.1,0.2,0.3\n0.1,0.2\n";
  EXPECT_THROW(read_optical_grid(dir / "m.json"), Error);
  std::ofstream(dir / "k.json") << R"({"kind": "husimi"})";
  EXPECT_THROW(read_grid_kind(dir / "k.json"), Error);
  EXPECT_THROW(read_optical_grid(dir / "missing.json"), Error);
  std::ofstream(dir / "n.json") << "{not json";
  EXPECT_THROW(read_grid_kind(dir / "n.json"), Error);
}

TEST(GridIo, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}
