#include "impact/tim.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "impact/error.hpp"
#include "impact/matrices.hpp"

namespace impact {
namespace {

std::string fmt_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string describe(const ExecutionProblem& prob) {
  return family_name(prob.kernel) + " kernel with theta = " + fmt_short(prob.theta);
}

// Gt^{-1} e, with the error naming the kernel/theta pair.
Vector inverse_times_ones(const ExecutionProblem& prob) {
  if (!(prob.theta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "theta must be non-negative");
  const Eigen::Index n = static_cast<Eigen::Index>(prob.grid.n_points());
  const Vector e = Vector::Ones(n);

  if (prob.theta == 0.0) {
    if (const auto* lin = std::get_if<LinearKernel>(&prob.kernel); lin && prob.grid.equidistant())
      return linear_kernel_inverse(lin->alpha, lin->beta, prob.grid.n_steps(), prob.grid.horizon()) * e;
  }
  const KernelMatrices mats = build_matrices(prob.kernel, prob.grid, prob.theta);
  try {
    return solve_checked(mats.gamma_theta, e, "Gamma_theta");
  } catch (const Error& err) {
    throw Error(err.code(), "no optimal schedule for " + describe(prob) + " (" + err.what() + ")");
  }
}

}  // namespace

Vector optimal_schedule(const ExecutionProblem& prob) {
  const Vector y = inverse_times_ones(prob);
  const double s = y.sum();
  if (!(std::abs(s) > 1e-300))
    throw Error(ErrorCode::NonsingularityViolation, "e^T Gt^{-1} e vanishes for " + describe(prob));
  return prob.inventory * y / s;
}

Vector optimal_schedule(const Matrix& gamma_theta, double inventory) {
  const Vector y = solve_checked(gamma_theta, Vector::Ones(gamma_theta.rows()), "Gamma_theta");
  const double s = y.sum();
  if (!(std::abs(s) > 1e-300))
    throw Error(ErrorCode::NonsingularityViolation, "e^T Gt^{-1} e vanishes");
  return inventory * y / s;
}

Vector kernel_shift_schedule(const ExecutionProblem& prob, double k_shift) {
  const double s = inverse_times_ones(prob).sum();
  const double denom = 1.0 + k_shift * s;
  if (std::abs(denom) <= 1e-12 * std::max(1.0, std::abs(k_shift * s)))
    throw Error(ErrorCode::ShermanMorrisonDegeneracy,
                "shift " + std::to_string(k_shift) + " equals -1 / (e^T Gt^{-1} e)");
  ExecutionProblem moved = prob;
  moved.kernel = shifted(prob.kernel, k_shift);
  return optimal_schedule(moved);
}

}  // namespace impact
