#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

namespace tomokit::detail {

// Six-point (quintic) Lagrange stencil on a uniform grid. For a fractional
// index u, the taps are floor(u)-2 .. floor(u)+3.
struct Stencil6 {
  std::ptrdiff_t first = 0;
  std::array<double, 6> weights{};
};

Stencil6 lagrange6(double u);

// Interpolates uniformly sampled f at fractional index u; samples outside
// [0, f.size()) count as zero.
double interpolate1d(std::span<const double> f, double u);

// Tensor-product interpolation of a row-major (rows x cols) array at
// fractional indices (u along rows, v along columns); zero outside.
double interpolate2d(std::span<const double> f, std::size_t rows, std::size_t cols, double u,
                     double v);

}  // namespace tomokit::detail
