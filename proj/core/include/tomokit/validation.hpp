#pragma once

// Tomogram-hood checks: structure, entropy bound, positivity of the
// characteristic function (quantum and classical), overlap positivity and
// the Radon fixed point.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tomokit/fock.hpp"
#include "tomokit/grid.hpp"
#include "tomokit/report.hpp"
#include "tomokit/sources.hpp"
#include "tomokit/transforms.hpp"

namespace tomokit {

/// xorshift64* seeded through splitmix64. next_double() is uniform in [0, 1)
/// from the top 53 bits.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed);
  std::uint64_t next();
  double next_double();

 private:
  std::uint64_t state_;
};

/// Reproducible group elements (mu_j, nu_j), uniform in a disk: r = R sqrt(u),
/// angle = 2 pi v with u, v drawn in that order. Points closer than 1e-9 to
/// an earlier one are redrawn.
struct PointSet {
  std::uint64_t seed = 0;
  std::vector<std::pair<double, double>> points;

  static PointSet generate(std::uint64_t seed, std::size_t size, double radius = 3.0);
};

enum class Kind { optical, symplectic };

struct StructuralOptions {
  GridSpec grid = default_grid();
  double normalization_tol = 1e-6;
  double negativity_tol = 1e-10;
  double parity_tol = 1e-8;
  double homogeneity_tol = 1e-10;
  std::uint64_t seed = 42;
};

/// Normalization, non-negativity, parity and (symplectic only) homogeneity.
std::vector<CheckReport> check_structural(const SymplecticView& source, Kind kind,
                                          const StructuralOptions& opt = {});

/// S(theta) = -int w ln w dX on row j, with 0 ln 0 = 0. Throws Error if the
/// row has values below -1e-12.
double shannon_entropy(const OpticalTomogramGrid& w, std::size_t j);
/// Same at an arbitrary phase via trigonometric interpolation.
double shannon_entropy(const OpticalTomogramGrid& w, double theta);

/// min_theta [S(theta) + S(theta + pi/2)] - ln(pi e); passes when >= -tol.
CheckReport check_hirschman(const OpticalTomogramGrid& w, double tol = 1e-3);

enum class PositivityMode { quantum, classical };

/// Differences (mu_j - mu_k, nu_j - nu_k) for j < k, row by row.
std::vector<std::pair<double, double>> pairwise_differences(const PointSet& set);

/// Z_jk = e^{i(mu_j nu_k - mu_k nu_j)/2} phi(mu_j - mu_k, nu_j - nu_k) in quantum
/// mode, without the phase in classical mode. `phi` lists the values at
/// pairwise_differences(set); the diagonal is phi(0, 0) = 1 and the lower
/// triangle is filled by conjugation, so Z is Hermitian by construction.
Eigen::MatrixXcd build_positivity_matrix(const PointSet& set,
                                         std::span<const std::complex<double>> phi,
                                         PositivityMode mode);

struct PositivityOptions {
  std::size_t n_sets = 200;
  std::size_t set_size = 8;
  std::uint64_t seed = 42;
  double radius = 3.0;
  /// Pass when every min eigenvalue >= -tol * max(1, ||Z||_2).
  double tol = 1e-8;
  CharacteristicQuadrature quadrature{};
};

/// Smallest eigenvalue over n_sets point sets with seeds seed, seed+1, ...
/// A pass means no violation was found, not a proof of positivity.
CheckReport check_positivity(const SymplecticView& source, PositivityMode mode,
                             const PositivityOptions& opt = {});

/// 2 pi int W W_psi dq dp with W reconstructed from the candidate by inverse
/// Radon and W_psi from the test matrix; equals Tr(rho rho_psi).
struct OverlapResult {
  double value = 0.0;
  bool reconstruction_warning = false;
};
OverlapResult pure_state_overlap(const OpticalTomogramGrid& candidate, const FockMatrix& psi,
                                 const GridSpec& phase = default_grid());
/// Same with a reconstruction computed once by the caller.
double pure_state_overlap(const WignerGrid& w, const FockMatrix& psi);

struct FixedPointOptions {
  GridSpec grid = default_grid();
  double tol = 5e-3;
};

/// Reconstructs W from the unit-circle restriction of the candidate,
/// reprojects it at every panel point through the polar relation and
/// reports max |M - M_reprojected| / max |M| over the panel.
CheckReport check_radon_fixed_point(const SymplecticView& candidate, const FixedPointOptions& opt = {});

/// Panel used by check_radon_fixed_point: X in {-1, -0.5, 0, 0.5, 1} times
/// radii {0.5, 1, 2} times 8 directions.
std::vector<std::array<double, 3>> fixed_point_panel();

}  // namespace tomokit
