#include "impact/matrices.hpp"

#include <cmath>
#include <string>

#include "impact/error.hpp"

namespace impact {

KernelMatrices build_matrices(const KernelSpec& spec, const TimeGrid& grid, double theta) {
  if (!(theta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "theta must be non-negative");
  check_compatible(spec, grid);
  const auto n = static_cast<Eigen::Index>(grid.n_points());

  KernelMatrices m;
  m.theta = theta;
  if (grid.equidistant()) {
    // Evaluate once per lag so the result is exactly Toeplitz.
    std::vector<double> g(grid.n_points());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = eval_kernel(spec, grid[k]);
    m.gamma = toeplitz(g);
  } else {
    m.gamma.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) {
        const double v = eval_kernel(spec, std::abs(grid[static_cast<std::size_t>(i)] -
                                                    grid[static_cast<std::size_t>(j)]));
        m.gamma(i, j) = v;
        m.gamma(j, i) = v;
      }
  }

  m.gamma_theta = m.gamma;
  m.gamma_theta.diagonal().array() += 2.0 * theta;

  m.gamma_tilde = m.gamma.triangularView<Eigen::StrictlyLower>();
  m.gamma_tilde.diagonal() = 0.5 * m.gamma.diagonal();
  return m;
}

KernelMatrices constant_kernel_matrices(double g1, double theta, std::size_t n_steps) {
  return build_matrices(ConstantKernel{g1}, TimeGrid::equidistant(1.0, n_steps), theta);
}

std::pair<Matrix, Matrix> closed_form_inverses(double g1, double theta, std::size_t n_steps) {
  if (!(g1 > 0.0)) throw Error(ErrorCode::InvalidArgument, "g1 must be positive");
  if (!(theta > 0.0))
    throw Error(ErrorCode::SingularityRisk,
                "closed-form inverses need theta > 0 (got " + std::to_string(theta) + ")");
  const auto n = static_cast<Eigen::Index>(n_steps + 1);
  const double lambda = 2.0 * theta / g1 + 0.5;

  // k-th superdiagonal coefficient, k >= 1: -(lambda-1)^(k-1) / (g1 lambda^(k+1)).
  // Built by recurrence to avoid pow() drift at large k.
  Vector band(n);
  band(0) = 1.0 / (g1 * lambda);
  if (n > 1) band(1) = -1.0 / (g1 * lambda * lambda);
  for (Eigen::Index k = 2; k < n; ++k) band(k) = band(k - 1) * (lambda - 1.0) / lambda;

  Matrix minus_inv = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) minus_inv(i, j) = band(j - i);

  // (Gt + Gtilde) = (Gt - Gtilde)^T + g1 e e^T
  const Matrix bt = minus_inv.transpose();
  const Vector u = bt * Vector::Ones(n);
  const Vector w = bt.transpose() * Vector::Ones(n);
  const double denom = 1.0 + g1 * u.sum();
  Matrix plus_inv = bt - (g1 / denom) * u * w.transpose();
  return {std::move(minus_inv), std::move(plus_inv)};
}

// Gamma(i, j) = alpha + b |i - j| with b = beta * horizon / N the slope per grid
// step. With eta_m = 2 alpha b + b^2 (m - 1):
//
//   Gamma^{-1} = 1/(2b) * [ -eta_N/eta_{N+1}   1   0 ...  0   b^2/eta_{N+1} ]
//                         [        1          -2   1 ...               0    ]
//                         [                   ...                          ]
//                         [  b^2/eta_{N+1}     0 ...  0   1  -eta_N/eta_{N+1} ]
Matrix linear_kernel_inverse(double alpha, double beta, std::size_t n_steps, double horizon) {
  if (beta == 0.0) throw Error(ErrorCode::DegenerateKernel, "linear kernel slope must be nonzero");
  if (n_steps == 0) throw Error(ErrorCode::InvalidArgument, "need at least one step");
  const double nn = static_cast<double>(n_steps);
  const double b = beta * horizon / nn;
  const double eta_n = 2.0 * alpha * b + b * b * (nn - 1.0);
  const double eta_n1 = 2.0 * alpha * b + b * b * nn;
  if (std::abs(eta_n1) < 1e-300 || std::abs(eta_n1) < 1e-14 * (std::abs(alpha * b) + b * b))
    throw Error(ErrorCode::DegenerateKernel,
                "linear kernel gram matrix is singular (2 alpha + beta T = 0)");

  const auto n = static_cast<Eigen::Index>(n_steps + 1);
  Matrix inv = Matrix::Zero(n, n);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    inv(i, i - 1) += 1.0;
    inv(i, i) += -2.0;
    inv(i, i + 1) += 1.0;
  }
  const Eigen::Index last = n - 1;
  inv(0, 0) += -eta_n / eta_n1;
  inv(0, 1) += 1.0;
  inv(0, last) += b * b / eta_n1;
  inv(last, last) += -eta_n / eta_n1;
  inv(last, last - 1) += 1.0;
  inv(last, 0) += b * b / eta_n1;
  return inv / (2.0 * b);
}

}  // namespace impact
