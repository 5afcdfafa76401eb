#include "tomokit/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "tomokit/grid.hpp"

namespace tomokit {

std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd a, double rel_tol) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw Error("eigenvalues need a square matrix");
  if (!a.allFinite()) throw Error("eigenvalues need finite entries");
  const double scale = a.norm();
  const double target = rel_tol * std::max(scale, 1e-300);

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    }
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm() > target; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        // rotation angle zeroing a(p, q), smaller root for stability
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  if (off_norm() > target * 10.0) throw Error("Jacobi eigensolver did not converge");

  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& a, double rel_tol) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw Error("eigenvalues need a square matrix");
  Eigen::MatrixXd big(2 * n, 2 * n);
  const Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
  big.topLeftCorner(n, n) = h.real();
  big.bottomRightCorner(n, n) = h.real();
  big.topRightCorner(n, n) = -h.imag();
  big.bottomLeftCorner(n, n) = h.imag();
  const std::vector<double> doubled = symmetric_eigenvalues(std::move(big), rel_tol);
  std::vector<double> ev(static_cast<std::size_t>(n));
  // ascending pairs; average each pair to absorb rounding
  for (std::size_t i = 0; i < ev.size(); ++i) ev[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  return ev;
}

}  // namespace tomokit
