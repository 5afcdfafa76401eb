#pragma once

// Fock (number-state) basis: density matrices, ladder operators and the
// Hermite-class tomogram sums
//   w(X, theta)    = sum_nm rho_nm e^{i theta (m-n)} psi_n(X) psi_m(X)
//   M(X, mu, nu)   = sum_nm rho_nm ((mu+i nu)/r)^m ((mu-i nu)/r)^n psi_n(X/r) psi_m(X/r) / r

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "tomokit/grid.hpp"

namespace tomokit {

/// Complex Hermitian coefficient matrix rho_nm, 0 <= n, m <= n_max.
///
/// Holds quantum density matrices and classical expansion coefficients
/// alike, so positivity is deliberately not an invariant.
class FockMatrix {
 public:
  /// Throws Error unless rho is square and Hermitian to `tol` (absolute).
  explicit FockMatrix(Eigen::MatrixXcd rho, double tol = 1e-10);

  static FockMatrix diagonal(const std::vector<double>& populations);
  /// |psi><psi| for the given amplitudes (not renormalized).
  static FockMatrix pure(const Eigen::VectorXcd& amplitudes);
  /// Coherent state |alpha>, alpha = (q0 + i p0)/sqrt(2), truncated at n_max.
  static FockMatrix coherent(double q0, double p0, int n_max);
  /// Squeezed vacuum with <q^2> = e^{-2r}/2, <p^2> = e^{2r}/2.
  static FockMatrix squeezed_vacuum(double r, int n_max);

  int n_max() const { return static_cast<int>(rho_.rows()) - 1; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  std::complex<double> operator()(int n, int m) const { return rho_(n, m); }
  double trace() const { return rho_.trace().real(); }

  /// Copy padded with zeros (or truncated) to a new cutoff.
  FockMatrix resized(int n_max) const;

 private:
  Eigen::MatrixXcd rho_;
};

/// Truncated position and momentum matrices, q = (a + a^dag)/sqrt 2,
/// p = i (a^dag - a)/sqrt 2, on the basis 0..n_max.
struct QuadratureOperators {
  Eigen::MatrixXcd q;
  Eigen::MatrixXcd p;
};
QuadratureOperators quadrature_operators(int n_max);

/// Tr(rho A) for a (possibly non-normalized) coefficient matrix.
std::complex<double> expectation(const FockMatrix& rho, const Eigen::MatrixXcd& op);

/// Optical tomogram of rho at (X, theta). Throws Error if the result has an
/// imaginary residual above 1e-12.
double fock_optical_eval(const FockMatrix& rho, double x, double theta);

/// Symplectic tomogram of rho at (X, mu, nu) by the Hermite double sum.
/// Throws Error at (mu, nu) = (0, 0), where M degenerates to delta(X).
double fock_symplectic_eval(const FockMatrix& rho, double x, double mu, double nu);

/// Wigner function W(q, p) = (1/pi) int <q-y|rho|q+y> e^{2ipy} dy sampled on
/// the phase part of `spec`.
WignerGrid wigner_grid_from_fock(const FockMatrix& rho, const GridSpec& spec);

/// Closed-form Wigner function of the Fock state |n>:
/// (-1)^n / pi * exp(-r^2) L_n(2 r^2), r^2 = q^2 + p^2.
double fock_state_wigner(int n, double q, double p);

}  // namespace tomokit
