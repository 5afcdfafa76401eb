#include "tomokit/fock.hpp"

#include <cmath>
#include <numbers>

#include "tomokit/hermite.hpp"
#include "tomokit/parallel.hpp"

namespace tomokit {

using cd = std::complex<double>;

FockMatrix::FockMatrix(Eigen::MatrixXcd rho, double tol) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) throw Error("Fock matrix must be square and non-empty");
  if (!rho.allFinite()) throw Error("Fock matrix contains non-finite entries");
  const double defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw Error("Fock matrix is not Hermitian (max |rho - rho^dag| = " + std::to_string(defect) + ")");
  }
  rho_ = 0.5 * (rho + rho.adjoint());
}

FockMatrix FockMatrix::diagonal(const std::vector<double>& populations) {
  if (populations.empty()) throw Error("diagonal Fock matrix needs at least one entry");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(populations.size()),
                                                static_cast<Eigen::Index>(populations.size()));
  for (std::size_t n = 0; n < populations.size(); ++n) {
    rho(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = populations[n];
  }
  return FockMatrix(std::move(rho));
}

FockMatrix FockMatrix::pure(const Eigen::VectorXcd& amplitudes) {
  return FockMatrix(amplitudes * amplitudes.adjoint());
}

FockMatrix FockMatrix::coherent(double q0, double p0, int n_max) {
  if (n_max < 0) throw Error("coherent state needs n_max >= 0");
  const cd alpha(q0 / std::numbers::sqrt2, p0 / std::numbers::sqrt2);
  Eigen::VectorXcd c(n_max + 1);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= n_max; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return pure(c);
}

FockMatrix FockMatrix::squeezed_vacuum(double r, int n_max) {
  if (n_max < 0) throw Error("squeezed state needs n_max >= 0");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n_max + 1);
  const double t = std::tanh(r);
  double amp = 1.0 / std::sqrt(std::cosh(r));
  for (int n = 0; 2 * n <= n_max; ++n) {
    c(2 * n) = amp;
    const double dn = static_cast<double>(n);
    amp *= -t * std::sqrt((2.0 * dn + 1.0) * (2.0 * dn + 2.0)) / (2.0 * (dn + 1.0));
  }
  return pure(c);
}

FockMatrix FockMatrix::resized(int n_max) const {
  if (n_max < 0) throw Error("cutoff must be >= 0");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
  const Eigen::Index k = std::min<Eigen::Index>(n_max + 1, rho_.rows());
  out.topLeftCorner(k, k) = rho_.topLeftCorner(k, k);
  return FockMatrix(std::move(out));
}

QuadratureOperators quadrature_operators(int n_max) {
  const Eigen::Index d = n_max + 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXcd ad = a.adjoint();
  QuadratureOperators ops;
  ops.q = (a + ad) / std::numbers::sqrt2;
  ops.p = cd(0.0, 1.0) * (ad - a) / std::numbers::sqrt2;
  return ops;
}

cd expectation(const FockMatrix& rho, const Eigen::MatrixXcd& op) {
  return (rho.matrix() * op).trace();
}

namespace {

// sum_nm conj(a_n) rho_nm a_m
cd quadratic_form(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& a) {
  return a.dot(rho * a);
}

double checked_real(cd v, const Eigen::MatrixXcd& rho) {
  const double scale = std::max(1.0, rho.cwiseAbs().sum());
  if (std::abs(v.imag()) > 1e-12 * scale) {
    throw Error("Hermite sum has an imaginary residual of " + std::to_string(v.imag()));
  }
  return v.real();
}

}  // namespace

double fock_optical_eval(const FockMatrix& rho, double x, double theta) {
  const int n_max = rho.n_max();
  const std::vector<double> psi = hermite_functions(n_max, x);
  Eigen::VectorXcd a(n_max + 1);
  for (int m = 0; m <= n_max; ++m) a(m) = std::polar(psi[m], static_cast<double>(m) * theta);
  return checked_real(quadratic_form(rho.matrix(), a), rho.matrix());
}

double fock_symplectic_eval(const FockMatrix& rho, double x, double mu, double nu) {
  const double r = std::hypot(mu, nu);
  if (r == 0.0) throw Error("symplectic tomogram is a delta function at (mu, nu) = (0, 0)");
  const int n_max = rho.n_max();
  const std::vector<double> psi = hermite_functions(n_max, x / r);
  const cd z(mu / r, nu / r);
  Eigen::VectorXcd a(n_max + 1);
  cd zm(1.0, 0.0);
  for (int m = 0; m <= n_max; ++m) {
    a(m) = zm * psi[m];
    zm *= z;
  }
  return checked_real(quadratic_form(rho.matrix(), a), rho.matrix()) / r;
}

WignerGrid wigner_grid_from_fock(const FockMatrix& rho, const GridSpec& spec) {
  spec.validate_phase();
  const int n_max = rho.n_max();
  const Eigen::Index d = n_max + 1;
  // psi_n(q - y) psi_n(q + y) <= e^{-(y - t)^2} past the turning point t
  const double y_max = std::sqrt(2.0 * n_max + 1.0) + 6.5;
  const double dy = 0.02;
  const auto ny = static_cast<Eigen::Index>(std::ceil(y_max / dy)) * 2 + 1;
  const double y0 = -dy * static_cast<double>((ny - 1) / 2);

  Eigen::MatrixXcd kernel(static_cast<Eigen::Index>(spec.n_q), ny);
  parallel_for(spec.n_q, [&](std::size_t i) {
    const double q = spec.q(i);
    Eigen::MatrixXcd minus(ny, d);
    Eigen::MatrixXd plus(ny, d);
    for (Eigen::Index l = 0; l < ny; ++l) {
      const double y = y0 + dy * static_cast<double>(l);
      const std::vector<double> a = hermite_functions(n_max, q - y);
      const std::vector<double> b = hermite_functions(n_max, q + y);
      for (Eigen::Index n = 0; n < d; ++n) {
        minus(l, n) = a[static_cast<std::size_t>(n)];
        plus(l, n) = b[static_cast<std::size_t>(n)];
      }
    }
    const Eigen::MatrixXcd t = minus * rho.matrix();
    for (Eigen::Index l = 0; l < ny; ++l) {
      cd s(0.0, 0.0);
      for (Eigen::Index m = 0; m < d; ++m) s += t(l, m) * plus(l, m);
      // trapezoid end weights are negligible: the kernel has decayed there
      kernel(static_cast<Eigen::Index>(i), l) = s * dy;
    }
  });

  Eigen::MatrixXcd phases(ny, static_cast<Eigen::Index>(spec.n_p));
  for (Eigen::Index l = 0; l < ny; ++l) {
    const double y = y0 + dy * static_cast<double>(l);
    for (std::size_t j = 0; j < spec.n_p; ++j) {
      phases(l, static_cast<Eigen::Index>(j)) = std::polar(1.0, 2.0 * spec.p(j) * y);
    }
  }
  const Eigen::MatrixXcd w = kernel * phases;
  std::vector<double> values(spec.n_q * spec.n_p);
  for (std::size_t i = 0; i < spec.n_q; ++i) {
    for (std::size_t j = 0; j < spec.n_p; ++j) {
      values[i * spec.n_p + j] =
          w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).real() / std::numbers::pi;
    }
  }
  return {spec, std::move(values)};
}

double fock_state_wigner(int n, double q, double p) {
  if (n < 0) throw Error("Fock index must be >= 0");
  const double r2 = q * q + p * p;
  const double x = 2.0 * r2;
  double l_prev = 1.0;
  double l = 1.0 - x;
  if (n == 0) l = 1.0;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * l - k * l_prev) / (k + 1.0);
    l_prev = l;
    l = next;
  }
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign / std::numbers::pi * std::exp(-r2) * l;
}

}  // namespace tomokit
