#include "tomokit/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tomokit {

std::vector<double> hermite_values(int n_max, double x) {
  if (n_max < 0) throw std::invalid_argument("hermite_values: n_max must be >= 0");
  if (!std::isfinite(x)) throw std::invalid_argument("hermite_values: x must be finite");
  std::vector<double> h(static_cast<std::size_t>(n_max) + 1);
  h[0] = 1.0;
  if (n_max >= 1) h[1] = 2.0 * x;
  for (int k = 1; k < n_max; ++k) {
    h[k + 1] = 2.0 * x * h[k] - 2.0 * k * h[k - 1];
    if (!std::isfinite(h[k + 1])) {
      throw std::overflow_error("hermite_values: H_" + std::to_string(k + 1) +
                                " overflows; use hermite_functions");
    }
  }
  return h;
}

std::vector<double> hermite_functions(int n_max, double x) {
  if (n_max < 0) throw std::invalid_argument("hermite_functions: n_max must be >= 0");
  if (!std::isfinite(x)) throw std::invalid_argument("hermite_functions: x must be finite");
  std::vector<double> psi(static_cast<std::size_t>(n_max) + 1);
  psi[0] = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  if (n_max >= 1) psi[1] = std::numbers::sqrt2 * x * psi[0];
  for (int n = 1; n < n_max; ++n) {
    const double dn = static_cast<double>(n);
    psi[n + 1] = std::sqrt(2.0 / (dn + 1.0)) * x * psi[n] - std::sqrt(dn / (dn + 1.0)) * psi[n - 1];
  }
  return psi;
}

}  // namespace tomokit
