#pragma once

// Uniform sampling grids for tomograms and phase-space functions.
//
// Units: m = omega = hbar = 1 throughout the library.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tomokit {

/// Raised for malformed grids, out-of-range requests and unreadable data.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sampling layout shared by tomogram grids (X, theta) and phase-space
/// grids (q, p).
///
/// Tomogram invariants: n_x >= 3 and odd, x_min == -x_max, theta_j = j*pi/n_theta.
struct GridSpec {
  double x_min = -7.0;
  double x_max = 7.0;
  std::size_t n_x = 281;
  std::size_t n_theta = 64;

  double q_min = -7.0;
  double q_max = 7.0;
  std::size_t n_q = 256;
  double p_min = -7.0;
  double p_max = 7.0;
  std::size_t n_p = 256;

  /// Throws Error unless the (X, theta) part satisfies the invariants.
  void validate_tomogram() const;
  /// Throws Error unless the (q, p) part is a non-degenerate grid.
  void validate_phase() const;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_x - 1); }
  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx(); }
  double dtheta() const;
  double theta(std::size_t j) const { return static_cast<double>(j) * dtheta(); }

  double dq() const { return (q_max - q_min) / static_cast<double>(n_q - 1); }
  double dp() const { return (p_max - p_min) / static_cast<double>(n_p - 1); }
  double q(std::size_t i) const { return q_min + static_cast<double>(i) * dq(); }
  double p(std::size_t j) const { return p_min + static_cast<double>(j) * dp(); }

  /// Short human-readable identifier used in reports.
  std::string id() const;
};

/// X in [-7, 7] with 281 samples, 64 phases, 256x256 phase grid on [-7, 7]^2.
GridSpec default_grid();

/// Trapezoid rule on uniformly spaced samples.
double trapezoid(std::span<const double> f, double h);

/// Optical tomogram w(X, theta) sampled on a uniform X x theta grid.
/// Values are row-major: one row per theta_j, n_x entries each.
class OpticalTomogramGrid {
 public:
  OpticalTomogramGrid(GridSpec spec, std::vector<double> values);

  static OpticalTomogramGrid sample(const GridSpec& spec,
                                    const std::function<double(double, double)>& w);

  const GridSpec& spec() const { return spec_; }
  std::size_t n_x() const { return spec_.n_x; }
  std::size_t n_theta() const { return spec_.n_theta; }

  double operator()(std::size_t j, std::size_t i) const { return values_[j * spec_.n_x + i]; }
  std::span<const double> row(std::size_t j) const {
    return {values_.data() + j * spec_.n_x, spec_.n_x};
  }
  std::span<const double> values() const { return values_; }

  /// Trapezoid integral of row j over X.
  double row_mass(std::size_t j) const;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

/// Phase-space function W(q, p) on a uniform grid; row-major over q.
class WignerGrid {
 public:
  WignerGrid(GridSpec spec, std::vector<double> values);

  static WignerGrid sample(const GridSpec& spec, const std::function<double(double, double)>& w);

  const GridSpec& spec() const { return spec_; }
  std::size_t n_q() const { return spec_.n_q; }
  std::size_t n_p() const { return spec_.n_p; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * spec_.n_p + j]; }
  std::span<const double> values() const { return values_; }

  /// Trapezoid integral over the full grid.
  double mass() const;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

/// Trigonometric interpolation of a tomogram in theta on the parity-extended
/// circle: the samples at theta_j + pi are w(-X, theta_j).
class ParityCircleInterpolator {
 public:
  explicit ParityCircleInterpolator(const OpticalTomogramGrid& w);

  /// cos(m theta), sin(m theta) for m = 0..n_theta, reusable across X nodes.
  struct Basis {
    std::vector<double> c;
    std::vector<double> s;
  };
  Basis basis(double theta) const;

  /// w(X_i, theta) for any real theta.
  double at(std::size_t i, double theta) const { return at(i, basis(theta)); }
  double at(std::size_t i, const Basis& b) const;
  /// Whole X row at theta.
  std::vector<double> row(double theta) const;

  const GridSpec& spec() const { return spec_; }

 private:
  GridSpec spec_;
  std::size_t harmonics_;  // n_theta; the top one is the Nyquist term
  // DFT coefficient k of X-node i lives at i * (harmonics_ + 1) + k
  std::vector<double> re_;
  std::vector<double> im_;
};

}  // namespace tomokit
