#include "interpolation.hpp"

namespace tomokit::detail {

Stencil6 lagrange6(double u) {
  const double base = std::floor(u);
  const double t = u - base;
  Stencil6 s;
  s.first = static_cast<std::ptrdiff_t>(base) - 2;
  // nodes at offsets -2..3 relative to base
  static constexpr std::array<double, 6> nodes{-2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
  static constexpr std::array<double, 6> denom{-120.0, 24.0, -12.0, 12.0, -24.0, 120.0};
  std::array<double, 6> d{};
  for (std::size_t k = 0; k < 6; ++k) d[k] = t - nodes[k];
  for (std::size_t k = 0; k < 6; ++k) {
    double prod = 1.0;
    for (std::size_t m = 0; m < 6; ++m) {
      if (m != k) prod *= d[m];
    }
    s.weights[k] = prod / denom[k];
  }
  return s;
}

double interpolate1d(std::span<const double> f, double u) {
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  if (!(u > -3.0) || !(u < static_cast<double>(n) + 2.0)) return 0.0;
  const Stencil6 s = lagrange6(u);
  double acc = 0.0;
  for (std::ptrdiff_t k = 0; k < 6; ++k) {
    const std::ptrdiff_t idx = s.first + k;
    if (idx >= 0 && idx < n) acc += s.weights[static_cast<std::size_t>(k)] * f[static_cast<std::size_t>(idx)];
  }
  return acc;
}

double interpolate2d(std::span<const double> f, std::size_t rows, std::size_t cols, double u,
                     double v) {
  const auto nr = static_cast<std::ptrdiff_t>(rows);
  const auto nc = static_cast<std::ptrdiff_t>(cols);
  if (!(u > -3.0) || !(u < static_cast<double>(nr) + 2.0)) return 0.0;
  if (!(v > -3.0) || !(v < static_cast<double>(nc) + 2.0)) return 0.0;
  const Stencil6 su = lagrange6(u);
  const Stencil6 sv = lagrange6(v);
  double acc = 0.0;
  for (std::ptrdiff_t a = 0; a < 6; ++a) {
    const std::ptrdiff_t r = su.first + a;
    if (r < 0 || r >= nr) continue;
    const double* row = f.data() + static_cast<std::size_t>(r) * cols;
    double line = 0.0;
    for (std::ptrdiff_t b = 0; b < 6; ++b) {
      const std::ptrdiff_t c = sv.first + b;
      if (c >= 0 && c < nc) line += sv.weights[static_cast<std::size_t>(b)] * row[c];
    }
    acc += su.weights[static_cast<std::size_t>(a)] * line;
  }
  return acc;
}

}  // namespace tomokit::detail
