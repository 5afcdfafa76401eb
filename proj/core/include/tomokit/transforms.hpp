#pragma once

// Radon maps between phase space and tomograms, their inverses, and the
// characteristic function phi(mu, nu) = int M(X, mu, nu) e^{iX} dX.

#include <complex>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/sources.hpp"

namespace tomokit {

/// Line integral of W along X = q cos(theta) + p sin(theta), parametrized as
/// q = X cos - s sin, p = X sin + s cos with s symmetric about 0 and step
/// equal to the output dX. W is interpolated with 6-point Lagrange stencils
/// and taken as zero off its grid.
OpticalTomogramGrid radon_optical(const WignerGrid& w, const GridSpec& out);

/// One line integral at an arbitrary (X, theta), using `dx` as the step.
double radon_line(const WignerGrid& w, double x, double theta, double dx);

/// Symplectic view of a sampled optical tomogram via the polar relation.
SymplecticView optical_to_symplectic(std::shared_ptr<const OpticalTomogramGrid> w);

/// Restriction of M to the unit circle, sampled on the tomogram part of `out`.
OpticalTomogramGrid symplectic_to_optical(const SymplecticView& m, const GridSpec& out);

struct Reconstruction {
  WignerGrid grid;
  /// Largest |w| on the first and last X samples of any row.
  double boundary_level = 0.0;
  /// Set when boundary_level exceeds 1e-10: the ramp filter will ring.
  bool boundary_warning = false;
};

/// Filtered backprojection: the ramp |eta| filter band-limited at the X grid
/// Nyquist frequency (applied as a spatial convolution with its exact
/// sampled kernel), then backprojection over theta with 6-point Lagrange
/// interpolation in X. Output lives on the phase part of `out`.
Reconstruction inverse_radon_optical(const OpticalTomogramGrid& w, const GridSpec& out);

/// X quadrature used for characteristic functions. For homogeneous views the
/// integral runs over Y = X / r, where the integrand has fixed width.
struct CharacteristicQuadrature {
  double half_width = 7.0;
  std::size_t n = 281;
};

struct CharacteristicSample {
  double mu = 0.0;
  double nu = 0.0;
  std::complex<double> value;
  /// (0, 0) is set to 1 by the normalization limit instead of integrated.
  bool limit = false;
};
using CharacteristicSamples = std::vector<CharacteristicSample>;

std::complex<double> characteristic_value(const SymplecticView& m, double mu, double nu,
                                          const CharacteristicQuadrature& quad = {});

CharacteristicSamples characteristic_function(const SymplecticView& m,
                                              std::span<const std::pair<double, double>> points,
                                              const CharacteristicQuadrature& quad = {});

/// phi on a uniform (mu, nu) grid, row-major over mu.
struct CharacteristicGrid {
  double mu_min = -12.0;
  double mu_max = 12.0;
  std::size_t n_mu = 241;
  double nu_min = -12.0;
  double nu_max = 12.0;
  std::size_t n_nu = 241;
  std::vector<std::complex<double>> values;

  double dmu() const { return (mu_max - mu_min) / static_cast<double>(n_mu - 1); }
  double dnu() const { return (nu_max - nu_min) / static_cast<double>(n_nu - 1); }
  double mu(std::size_t i) const { return mu_min + static_cast<double>(i) * dmu(); }
  double nu(std::size_t j) const { return nu_min + static_cast<double>(j) * dnu(); }
};

/// Samples phi of `m` on the layout of `layout` (its values are ignored).
CharacteristicGrid sample_characteristic(const SymplecticView& m, CharacteristicGrid layout,
                                         const CharacteristicQuadrature& quad = {});

struct FourierReconstruction {
  WignerGrid grid;
  /// Largest |phi| on the boundary of the (mu, nu) grid.
  double boundary_level = 0.0;
  /// Set when boundary_level exceeds 1e-8.
  bool decay_warning = false;
};

/// W(q, p) = (2 pi)^-2 int phi(mu, nu) e^{-i(mu q + nu p)} dmu dnu on the
/// phase part of `out`. Throws Error if the imaginary residual exceeds 1e-8.
FourierReconstruction wigner_from_characteristic(const CharacteristicGrid& phi, const GridSpec& out);

}  // namespace tomokit
