#pragma once

// Normalization conservation: moment profiles and their allowed harmonics,
// the moment ODE operators, the cubic-potential normalization flux, the
// symplectic polynomial conditions and projection onto the Hermite class.

#include <array>
#include <vector>

#include "tomokit/fock.hpp"
#include "tomokit/grid.hpp"
#include "tomokit/sources.hpp"

namespace tomokit {

/// g_m(theta_j) = int X^m w(X, theta_j) dX.
struct MomentProfile {
  int order = 0;
  GridSpec spec;
  std::vector<double> values;
  /// Estimated contribution of the truncated tails.
  double tail_bound = 0.0;
  /// Set when tail_bound exceeds 1e-6.
  bool truncation_warning = false;
};
MomentProfile moment_profile(const OpticalTomogramGrid& w, int m);

struct Harmonic {
  int k = 0;
  double cos_coef = 0.0;  // coefficient of cos(k theta)
  double sin_coef = 0.0;  // coefficient of sin(k theta)
};

/// Fourier content of a moment profile on the parity-extended circle.
/// Allowed for order m: k <= m with k = m (mod 2); everything else that is
/// present is forbidden. residual is the L2 norm of the forbidden
/// coefficients, sqrt(sum a_k^2 + b_k^2).
struct HarmonicFit {
  int order = 0;
  std::vector<Harmonic> allowed;
  std::vector<Harmonic> forbidden;
  double residual = 0.0;
};
HarmonicFit harmonic_residual(const MomentProfile& g);

/// Pointwise residual of the moment ODE for order m, applied spectrally:
///   odd m:  prod_{k=0}^{(m-1)/2} (d^2/dtheta^2 + (2k+1)^2) g
///   even m: d/dtheta prod_{k=1}^{m/2} (d^2/dtheta^2 + (2k)^2) g
struct OdeResidual {
  std::vector<double> values;
  /// sqrt(int_0^pi residual^2 dtheta)
  double l2 = 0.0;
  /// Set when harmonics above n_theta/2 carry more than 10% of the energy.
  bool noisy = false;
};
OdeResidual ode_residual(const MomentProfile& g);

/// d/dt int w dX at t = 0 from a potential term coupling * q^3:
/// coupling * 3 sin^3(theta) (g_1'' + g_1), on the theta grid.
std::vector<double> normalization_flux_cubic(const OpticalTomogramGrid& w, double coupling);

/// Summary of a flux profile: signed theta integral, L1 norm, max |flux|.
struct FluxSummary {
  double integral = 0.0;
  double l1 = 0.0;
  double max_abs = 0.0;
};
FluxSummary summarize_flux(const std::vector<double>& flux, const GridSpec& spec);

/// Default (mu, nu) panel for the symplectic moment fit: radii
/// {0.5, 1, 1.5, 2, 2.5} times 12 directions.
std::vector<std::array<double, 2>> symplectic_panel();

/// Relative least-squares misfit of mu, nu -> int X^m M dX against the
/// homogeneous polynomials of degree m. Throws Error on a rank-deficient panel.
double symplectic_moment_residual(const SymplecticView& m_view, int m,
                                  const std::vector<std::array<double, 2>>& panel = symplectic_panel(),
                                  const GridSpec& grid = default_grid());

struct ClassProjection {
  FockMatrix rho;
  /// ||w - reconstruction|| / ||w|| over the grid samples.
  double residual = 0.0;
  /// Largest least-squares condition number over the diagonals.
  double condition = 0.0;
  /// Set when the condition number exceeds 1e10.
  bool ill_conditioned = false;
};

/// Extracts rho_nm with w ~ sum rho_nm e^{i theta (m-n)} psi_n psi_m.
ClassProjection hermite_class_projection(const OpticalTomogramGrid& w, int n_max);

/// Class-sum tomogram of rho sampled on `spec`.
OpticalTomogramGrid class_tomogram(const FockMatrix& rho, const GridSpec& spec);

/// rho_nm = int W((q+q')/2, p) e^{ip(q-q')} psi_n(q) psi_m(q') dq dq' dp.
FockMatrix classical_rho_extraction(const WignerGrid& w, int n_max);

}  // namespace tomokit
