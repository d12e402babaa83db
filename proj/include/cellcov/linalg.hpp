#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace cellcov {

// Eigenvalues of a symmetric matrix (row-major n*n) by cyclic Jacobi
// rotations. Sweeps run until the off-diagonal Frobenius norm falls below
// rel_tol times the Frobenius norm of the input, plus one extra sweep so
// the quadratic convergence leaves the residual far under the threshold.
// Returned values are unsorted.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n, double rel_tol = 1e-12);

// Cholesky factor L (lower, row-major) of a symmetric positive definite
// matrix, or nullopt if the matrix is not positive definite.
std::optional<std::vector<double>> cholesky(const std::vector<double>& a, std::size_t n);

}  // namespace cellcov
