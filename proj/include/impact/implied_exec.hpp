#pragma once

#include <vector>

#include "impact/grid.hpp"
#include "impact/implied_price.hpp"
#include "impact/kernel.hpp"
#include "impact/linalg.hpp"

namespace impact {

/// H g = e restates "xi is the optimal schedule for Pi = Toep(g)" with the
/// multiplier normalized to one: H(i, l) = sum of xi_j over |i - j| = l.
struct HSystem {
  Matrix h;
  Vector xi;
  bool solved = false;
  std::size_t rank = 0;
  Vector particular;  // minimum-norm solution
  std::vector<Vector> nullspace_basis;
  double residual = 0.0;  // ||H particular - e||_inf
  bool consistent = true;
  bool u_shaped = true;
};

HSystem build_h(const Vector& xi);

/// Rank by SVD with singular values below rank_tol * sigma_max treated as zero.
/// An inconsistent system is reported through `consistent` and `residual`.
HSystem solve_h(HSystem sys, double rank_tol = 1e-10);

/// Solution with the trailing entries of g fixed to `tail`; the leading entries
/// are solved by least squares and must reproduce H g = e.
Vector solution_with_fixed_tail(const HSystem& sys, const Vector& tail);

/// Smallest ||H (c g) - e||_inf over scalars c: zero when g lies in the
/// solution space up to a positive multiple.
double membership_residual(const HSystem& sys, const Vector& g);

/// Tabulated kernel whose Gamma_theta equals Toep(g): G = g - 2 theta delta_0.
TabulatedKernel kernel_from_h_solution(const Vector& g, double theta, const TimeGrid& grid);

/// Ratios (xi_{k-1} - xi_k) / (X - 2 sum_{i<k} xi_i) for k = 2 .. floor(N/2 + 1).
std::vector<double> linear_condition_ratios(const Vector& xi, double inventory);

bool linear_condition_check(const Vector& xi, double inventory, double tol = kDefaultTol);

/// beta = -2 theta (N / T) (xi_1 - xi_2) / (X - 2 xi_1). Throws NoLinearSolution
/// when the ratio condition fails.
double linear_implied_slope(const Vector& xi, double theta, std::size_t n_steps, double inventory,
                            double horizon = 1.0, double tol = 1e-8);

/// -4 theta N G1^2 / (16 theta^2 - G1^2).
double linear_slope_closed_form(double g1, double theta, std::size_t n_steps);

/// Linear kernel with slope beta and G(T) = 0.
LinearKernel linear_implied_kernel(double beta, double horizon = 1.0);

}  // namespace impact
