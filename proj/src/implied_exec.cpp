#include "impact/implied_exec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "impact/error.hpp"
#include "impact/game.hpp"

namespace impact {

HSystem build_h(const Vector& xi) {
  const Eigen::Index n = xi.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "H system needs at least two trades");
  HSystem sys;
  sys.xi = xi;
  sys.h = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) sys.h(i, std::abs(i - j)) += xi(j);
  return sys;
}

HSystem solve_h(HSystem sys, double rank_tol) {
  const Eigen::Index n = sys.h.rows();
  const Vector e = Vector::Ones(n);
  Eigen::JacobiSVD<Matrix> svd(sys.h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double cut = rank_tol * (sv.size() ? sv(0) : 0.0);

  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  sys.rank = static_cast<std::size_t>(r);

  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  sys.particular = Vector::Zero(n);
  for (Eigen::Index k = 0; k < r; ++k) sys.particular += (u.col(k).dot(e) / sv(k)) * v.col(k);
  sys.nullspace_basis.clear();
  for (Eigen::Index k = r; k < n; ++k) sys.nullspace_basis.emplace_back(v.col(k));

  sys.residual = (sys.h * sys.particular - e).cwiseAbs().maxCoeff();
  sys.consistent = sys.residual <= 1e-8 * std::max(1.0, sys.particular.cwiseAbs().maxCoeff());
  // The rank law is only claimed for U-shaped schedules.
  sys.u_shaped = sys.xi.size() >= 3 && shape_report(sys.xi, 1e-12).u_shaped();
  sys.solved = true;
  return sys;
}

Vector solution_with_fixed_tail(const HSystem& sys, const Vector& tail) {
  const Eigen::Index n = sys.h.cols();
  const Eigen::Index m = tail.size();
  if (m > n) throw Error(ErrorCode::WrongArity, "tail longer than the kernel");
  const Vector rhs = Vector::Ones(n) - sys.h.rightCols(m) * tail;
  const Matrix head = sys.h.leftCols(n - m);
  Vector g(n);
  g.head(n - m) = head.completeOrthogonalDecomposition().solve(rhs);
  g.tail(m) = tail;
  return g;
}

double membership_residual(const HSystem& sys, const Vector& g) {
  if (g.size() != sys.h.cols()) throw Error(ErrorCode::WrongArity, "kernel length mismatch");
  const Vector hg = sys.h * g;
  const double denom = hg.squaredNorm();
  if (denom == 0.0) return 1.0;
  const double c = hg.sum() / denom;
  return (c * hg - Vector::Ones(hg.size())).cwiseAbs().maxCoeff();
}

TabulatedKernel kernel_from_h_solution(const Vector& g, double theta, const TimeGrid& grid) {
  std::vector<double> values = to_std(g);
  if (values.size() != grid.n_points())
    throw Error(ErrorCode::WrongArity, "kernel length does not match the grid");
  values[0] -= 2.0 * theta;
  return TabulatedKernel::on_grid(grid, std::move(values));
}

std::vector<double> linear_condition_ratios(const Vector& xi, double inventory) {
  const Eigen::Index n_steps = xi.size() - 1;
  const Eigen::Index last = n_steps / 2 + 1;  // floor(N/2 + 1), 1-based
  std::vector<double> ratios;
  double partial = 0.0;
  for (Eigen::Index k = 2; k <= last; ++k) {
    partial += xi(k - 2);
    const double denom = inventory - 2.0 * partial;
    if (std::abs(denom) <= 1e-14 * std::max(1.0, std::abs(inventory)))
      throw Error(ErrorCode::DegenerateSchedule,
                  "X - 2 sum xi vanishes at k = " + std::to_string(k));
    ratios.push_back((xi(k - 2) - xi(k - 1)) / denom);
  }
  return ratios;
}

bool linear_condition_check(const Vector& xi, double inventory, double tol) {
  const auto ratios = linear_condition_ratios(xi, inventory);
  // Late ratios divide by X - 2 sum xi, which can sit at round-off level when
  // the schedule is concentrated at the ends. Those carry no information.
  double lo = ratios.empty() ? 0.0 : ratios.front(), hi = lo, partial = 0.0;
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    partial += xi(static_cast<Eigen::Index>(k));
    if (std::abs(inventory - 2.0 * partial) < 1e-6 * std::abs(inventory)) break;
    lo = std::min(lo, ratios[k]);
    hi = std::max(hi, ratios[k]);
  }
  return hi - lo <= tol;
}

double linear_implied_slope(const Vector& xi, double theta, std::size_t n_steps, double inventory,
                            double horizon, double tol) {
  if (static_cast<std::size_t>(xi.size()) != n_steps + 1)
    throw Error(ErrorCode::WrongArity, "schedule length does not match N + 1");
  if (!linear_condition_check(xi, inventory, tol))
    throw Error(ErrorCode::NoLinearSolution, "schedule fails the linear-kernel ratio condition");
  const double denom = inventory - 2.0 * xi(0);
  if (std::abs(denom) <= 1e-14 * std::max(1.0, std::abs(inventory)))
    throw Error(ErrorCode::DegenerateSchedule, "X - 2 xi_1 vanishes");
  return -2.0 * theta * (static_cast<double>(n_steps) / horizon) * (xi(0) - xi(1)) / denom;
}

double linear_slope_closed_form(double g1, double theta, std::size_t n_steps) {
  const double denom = 16.0 * theta * theta - g1 * g1;
  if (denom == 0.0)
    throw Error(ErrorCode::NoLinearSolution, "slope undefined at theta = G1 / 4");
  return -4.0 * theta * static_cast<double>(n_steps) * g1 * g1 / denom;
}

LinearKernel linear_implied_kernel(double beta, double horizon) {
  return LinearKernel{-beta * horizon, beta};
}

}  // namespace impact
