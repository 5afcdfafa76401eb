#pragma once

// Reference dynamics: exact harmonic rotation of optical tomograms, explicit
// RK4 integrators for the Liouville and Moyal equations with polynomial
// potentials, von Neumann evolution in the Fock basis, and the drift
// experiment built on them.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tomokit/catalog.hpp"
#include "tomokit/conservation.hpp"
#include "tomokit/fock.hpp"
#include "tomokit/grid.hpp"

namespace tomokit {

/// V(q) = c1 q + c2 q^2 + c3 q^3 + c4 q^4.
struct PolynomialPotential {
  std::array<double, 4> c{};  // c[k-1] multiplies q^k

  /// "c2=0.5,c3=0.1" (any subset, any order); "harmonic" is c2 = 0.5;
  /// "free" or "" is zero. Unknown keys and degrees above 4 are rejected.
  static PolynomialPotential parse(std::string_view text);
  std::string str() const;

  double value(double q) const;
  double d1(double q) const;
  double d2(double q) const;
  double d3(double q) const;
  int degree() const;
  double coefficient(int k) const { return c.at(static_cast<std::size_t>(k - 1)); }
};

/// Samples over time. observables[k] = {<q>, <p>, <q^2>, <p^2>} at t[k].
struct EvolutionTrace {
  std::vector<double> t;
  std::vector<double> mass;
  std::vector<std::array<double, 4>> observables;
};

/// w(X, theta, t) = w0(X, theta + t), with theta + t wrapped through the
/// parity rule and interpolated trigonometrically.
OpticalTomogramGrid evolve_harmonic_tomogram(const OpticalTomogramGrid& w0, double t);

struct PhaseEvolution {
  WignerGrid grid;
  EvolutionTrace trace;  // every step
  double dt = 0.0;
  std::size_t steps = 0;
  /// Largest mass fraction seen in the three outermost cells on any side.
  double outflow = 0.0;
  bool outflow_warning = false;
};

/// Largest stable step: 0.4 min(dq / |p|max, dp / |V'|max).
double liouville_dt_limit(const GridSpec& spec, const PolynomialPotential& v);
/// Liouville limit further restricted by the third-derivative term so that
/// the RK4 amplification stays inside its stability region.
double moyal_dt_limit(const GridSpec& spec, const PolynomialPotential& v);

/// dW/dt = -p dW/dq + V'(q) dW/dp by 4th-order central differences (zero
/// outside the grid) and classical RK4. dt <= 0 picks the largest stable
/// step that divides t_end; a larger dt than the limit throws Error.
PhaseEvolution evolve_liouville(const WignerGrid& w0, const PolynomialPotential& v, double t_end,
                                double dt = 0.0);

/// Liouville minus (1/24) V'''(q) d^3W/dp^3, exact for polynomial V.
PhaseEvolution evolve_moyal(const WignerGrid& w0, const PolynomialPotential& v, double t_end,
                            double dt = 0.0);

/// H = p^2/2 + V(q) on the basis 0..n_max, built at a larger cutoff and
/// truncated so every kept entry is exact.
Eigen::MatrixXcd hamiltonian_matrix(const PolynomialPotential& v, int n_max);

struct FockEvolution {
  FockMatrix rho;
  /// rho at t = 0 and at every checkpoint.
  std::vector<FockMatrix> snapshots;
  EvolutionTrace trace;  // checkpoints, mass = Tr rho
  std::vector<double> energy;
  double dt = 0.0;
  std::size_t steps = 0;
  /// Largest |rho_nm| with n or m in the top two levels, over checkpoints.
  double leakage = 0.0;
  bool leakage_warning = false;
};

/// RK4 on i drho/dt = [H, rho] with `checkpoints` uniform samples after t = 0.
/// dt <= 0 picks min(1e-3, 1 / spread(H)); dt beyond 2.5 / spread throws.
FockEvolution evolve_fock(const FockMatrix& rho0, const PolynomialPotential& v, double t_end,
                          double dt = 0.0, std::size_t checkpoints = 20);

struct DriftOptions {
  GridSpec grid = default_grid();
  int n_max = 24;
  /// Projection residual below which a state counts as a class member.
  double membership_tol = 1e-6;
  std::size_t checkpoints = 20;
};

struct DriftReport {
  bool member = false;
  std::string route;  // fock-representation, class-projection, none
  double projection_residual = 0.0;
  double c3 = 0.0;

  // class members
  std::vector<double> t;
  std::vector<double> mass_min;  // min over theta of int w dX
  std::vector<double> mass_max;
  double max_mass_change = 0.0;
  bool leakage_warning = false;

  // flux, when c3 != 0
  std::optional<std::vector<double>> flux;
  FluxSummary flux_summary;
  std::optional<double> flux_at_quarter_pi;

  std::string note;
};

DriftReport drift_experiment(const State& state, const PolynomialPotential& v, double t_end,
                             const DriftOptions& opt = {});

}  // namespace tomokit
