#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <span>

#include <Eigen/Dense>

#include "tomokit/fock.hpp"
#include "tomokit/grid.hpp"

namespace tomokit::test {

inline constexpr double kPi = 3.14159265358979323846;
inline const double kInvSqrtPi = 1.0 / std::sqrt(kPi);

// Random Hermitian matrix with unit trace (not necessarily positive).
inline FockMatrix random_hermitian(std::mt19937_64& rng, int n_max) {
  std::normal_distribution<double> g;
  const int d = n_max + 1;
  Eigen::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
  // keep the trace away from zero before normalizing
  for (int i = 0; i < d; ++i) h(i, i) += 2.0 * d;
  h /= h.trace().real();
  return FockMatrix(h);
}

// Random density matrix: A A^dag / Tr.
inline FockMatrix random_density(std::mt19937_64& rng, int n_max) {
  std::normal_distribution<double> g;
  const int d = n_max + 1;
  Eigen::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  return FockMatrix(rho);
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double relative_l2(std::span<const double> a, std::span<const double> ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ref[i]) * (a[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  return std::sqrt(num / den);
}

}  // namespace tomokit::test
