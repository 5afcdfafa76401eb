#pragma once

#include <vector>

#include <Eigen/Dense>

namespace tomokit {

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Cyclic Jacobi rotations on the real-symmetric embedding
/// [[Re A, -Im A], [Im A, Re A]], whose spectrum is that of A with every
/// eigenvalue doubled. Sweeps stop once the off-diagonal Frobenius norm
/// falls below rel_tol * ||A||_F.
std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& a, double rel_tol = 1e-12);

/// Real-symmetric eigenvalues by the same Jacobi sweeps, ascending.
std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd a, double rel_tol = 1e-12);

}  // namespace tomokit
