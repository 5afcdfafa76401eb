#pragma once

#include <vector>

namespace tomokit {

/// Physicists' Hermite polynomials H_0(x) .. H_{n_max}(x) by the three-term
/// recurrence H_{k+1} = 2x H_k - 2k H_{k-1}.
///
/// Throws std::invalid_argument for n_max < 0 or non-finite x, and
/// std::overflow_error when a value leaves the double range; use
/// hermite_functions for the scaled representation in that regime.
std::vector<double> hermite_values(int n_max, double x);

/// Normalized Hermite functions
///   psi_n(x) = H_n(x) exp(-x^2/2) / (pi^{1/4} 2^{n/2} sqrt(n!)),
/// computed with the stable recurrence
///   psi_{n+1} = sqrt(2/(n+1)) x psi_n - sqrt(n/(n+1)) psi_{n-1}.
/// Safe for n_max well beyond 60.
std::vector<double> hermite_functions(int n_max, double x);

}  // namespace tomokit
