#pragma once

#include "impact/grid.hpp"
#include "impact/kernel.hpp"
#include "impact/linalg.hpp"

namespace impact {

struct ExecutionProblem {
  TimeGrid grid = TimeGrid::equidistant(1.0, 25);
  KernelSpec kernel = ConstantKernel{1.0};
  double theta = 1.0;
  double inventory = 1.0;
};

/// eta* = X Gt^{-1} e / (e^T Gt^{-1} e). With theta = 0 and a linear kernel on
/// an equidistant grid the explicit inverse of Gamma is used.
Vector optimal_schedule(const ExecutionProblem& prob);

/// Same formula for an explicit Gamma_theta.
Vector optimal_schedule(const Matrix& gamma_theta, double inventory);

/// Schedule under G(t) + k_shift. Throws ShermanMorrisonDegeneracy when
/// 1 + k_shift e^T Gt^{-1} e vanishes.
Vector kernel_shift_schedule(const ExecutionProblem& prob, double k_shift);

}  // namespace impact
