#pragma once

#include <functional>
#include <memory>
#include <string>

#include "tomokit/grid.hpp"

namespace tomokit {

using OpticalFn = std::function<double(double x, double theta)>;
using SymplecticFn = std::function<double(double x, double mu, double nu)>;
using PhaseFn = std::function<double(double q, double p)>;

/// Direction of (mu, nu) folded into theta in [0, pi), with the sign that
/// carries the X flip for directions in [pi, 2 pi). On the mu axis the
/// positive half maps to (0, +1) and the negative half to (0, -1).
struct PolarAngle {
  double radius = 0.0;
  double theta = 0.0;
  double sign = 1.0;
};
PolarAngle polar_angle(double mu, double nu);

/// Evaluator for an optical grid: quintic Lagrange in X (zero outside the
/// grid) and trigonometric interpolation in theta on the parity circle.
OpticalFn grid_optical_fn(std::shared_ptr<const OpticalTomogramGrid> grid);

/// Symplectic tomogram M(X, mu, nu).
///
/// Either derived from an optical function through the polar relation
///   M(X, mu, nu) = w(X sgn / r, theta) / r,
/// in which case M(lX, l mu, l nu) = M(X, mu, nu)/|l| holds by construction,
/// or given directly as a closed form.
class SymplecticView {
 public:
  /// How the X extent of M scales with (mu, nu); drives quadrature over X.
  enum class Scaling { homogeneous, fixed };

  static SymplecticView from_optical(OpticalFn optical, std::string label = {});
  static SymplecticView analytic(SymplecticFn fn, Scaling scaling, std::string label = {});

  /// Polar-derived views throw Error at (mu, nu) = (0, 0); closed forms
  /// throw only where they are singular themselves.
  double operator()(double x, double mu, double nu) const;
  /// Restriction to the unit circle, mu = cos theta, nu = sin theta.
  double optical(double x, double theta) const;

  bool polar_derived() const { return static_cast<bool>(optical_); }
  Scaling scaling() const { return scaling_; }
  /// Width scale of M in X: r for homogeneous views, 1 otherwise.
  double x_scale(double mu, double nu) const;
  const std::string& label() const { return label_; }

 private:
  OpticalFn optical_;
  SymplecticFn direct_;
  Scaling scaling_ = Scaling::homogeneous;
  std::string label_;
};

}  // namespace tomokit
