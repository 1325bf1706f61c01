#pragma once

#include <utility>

#include "impact/grid.hpp"
#include "impact/kernel.hpp"
#include "impact/linalg.hpp"

namespace impact {

/// Game matrices for one kernel on one grid.
///
///   gamma(i, j)       = G(|t_i - t_j|)
///   gamma_theta       = gamma + 2 theta I
///   gamma_tilde(i, j) = gamma(i, j) below the diagonal, G(0)/2 on it, 0 above
///
/// so gamma = gamma_tilde + gamma_tilde^T.
struct KernelMatrices {
  Matrix gamma;
  Matrix gamma_theta;
  Matrix gamma_tilde;
  double theta = 0.0;

  Eigen::Index size() const { return gamma.rows(); }
};

KernelMatrices build_matrices(const KernelSpec& spec, const TimeGrid& grid, double theta);

/// Constant-kernel matrices for n_steps + 1 trading times; only the point count
/// matters when G is constant.
KernelMatrices constant_kernel_matrices(double g1, double theta, std::size_t n_steps);

/// Explicit inverses for the constant kernel G = g1 on N + 1 points:
/// first = (gamma_theta - gamma_tilde)^{-1}, upper triangular with diagonal
/// 1/(g1 lambda) and k-th superdiagonal -(lambda - 1)^(k-1) / (g1 lambda^(k+1));
/// second = (gamma_theta + gamma_tilde)^{-1} by a Sherman-Morrison update of
/// the transpose of the first. lambda = 2 theta / g1 + 1/2.
std::pair<Matrix, Matrix> closed_form_inverses(double g1, double theta, std::size_t n_steps);

/// Explicit inverse of gamma for the linear kernel G(t) = alpha + beta t on an
/// equidistant grid of n_steps steps over [0, horizon]. Near-tridiagonal with
/// corner corrections; see linear_kernel_inverse in matrices.cpp.
Matrix linear_kernel_inverse(double alpha, double beta, std::size_t n_steps, double horizon = 1.0);

}  // namespace impact
