#pragma once

#include <Eigen/Core>
#include <optional>

namespace gcrkit {

// Chart dimension n <= 3, ambient dimension n + 1 <= 4. Dynamic size with a fixed
// upper bound keeps everything on the stack.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

/// Lower-triangular L with a = L L^T, or nullopt when a is not positive definite.
std::optional<Mat> cholesky(const Mat& a);

struct SymmetricEigen {
  Vec values;   // ascending
  Mat vectors;  // columns, orthonormal
};

/// Cyclic Jacobi rotations for a small symmetric matrix.
SymmetricEigen jacobi_eigen(const Mat& a, double tol = 1e-15, int max_sweeps = 64);

/// Solves a v = k b v for symmetric a and SPD b. Eigenvectors are b-orthonormal.
/// Returns nullopt when b is not positive definite.
std::optional<SymmetricEigen> generalized_eigen(const Mat& a, const Mat& b);

}  // namespace gcrkit
