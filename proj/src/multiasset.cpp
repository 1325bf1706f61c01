#include "impact/multiasset.hpp"

#include <cmath>
#include <cstdio>

#include "impact/error.hpp"
#include "impact/matrices.hpp"

namespace impact {
namespace {

void check_inputs(const Matrix& q, const Matrix& inventories) {
  if (q.rows() != q.cols() || q.rows() == 0)
    throw Error(ErrorCode::WrongArity, "cross-impact matrix must be square");
  if (inventories.cols() != q.rows())
    throw Error(ErrorCode::WrongArity, "inventories need one column per asset");
  if (inventories.rows() < 2) throw Error(ErrorCode::WrongArity, "a game needs at least two agents");
}

}  // namespace

CrossImpact eigendecompose(const Matrix& q) {
  if (q.rows() != q.cols() || q.rows() == 0)
    throw Error(ErrorCode::WrongArity, "cross-impact matrix must be square");
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorCode::InvalidArgument, "cross-impact matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (q + q.transpose()));
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::NotPositiveDefinite, "eigendecomposition failed");
  const Eigen::Index m = q.rows();

  CrossImpact ci;
  ci.q = q;
  ci.eigenvalues = es.eigenvalues().reverse();
  ci.eigenvectors = es.eigenvectors().rowwise().reverse();
  for (Eigen::Index l = 0; l < m; ++l) {
    if (!(ci.eigenvalues(l) > 0.0)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "eigenvalue %ld is %.17g", static_cast<long>(l + 1),
                    ci.eigenvalues(l));
      throw Error(ErrorCode::NotPositiveDefinite, buf);
    }
    Eigen::Index big = 0;
    ci.eigenvectors.col(l).cwiseAbs().maxCoeff(&big);
    if (ci.eigenvectors(big, l) < 0.0) ci.eigenvectors.col(l) *= -1.0;
  }
  return ci;
}

MultiAssetEquilibrium multiasset_equilibrium(const Matrix& q, const Matrix& inventories,
                                             double g1, double theta, const TimeGrid& grid) {
  check_inputs(q, inventories);
  MultiAssetEquilibrium out;
  out.cross = eigendecompose(q);
  const Matrix& v = out.cross.eigenvectors;
  const Eigen::Index m = q.rows();
  const Eigen::Index j = inventories.rows();
  const auto l = static_cast<Eigen::Index>(grid.n_points());

  out.rotated_inventories = inventories * v;
  for (Eigen::Index a = 0; a < m; ++a) {
    const double kernel = g1 * out.cross.eigenvalues(a);
    if (theta < kernel / 4.0) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "theta %.17g is below the stability threshold %.17g of eigenvalue %.17g",
                    theta, kernel / 4.0, out.cross.eigenvalues(a));
      out.warnings.emplace_back(buf);
    }
    GameSpec spec;
    spec.grid = grid;
    spec.kernel = ConstantKernel{kernel};
    spec.theta = theta;
    spec.inventories.assign(out.rotated_inventories.col(a).data(),
                            out.rotated_inventories.col(a).data() + j);
    out.eigen_games.push_back(j == 2 ? two_agent_equilibrium(spec) : multi_agent_equilibrium(spec));
  }

  for (Eigen::Index ag = 0; ag < j; ++ag) {
    Matrix rotated(m, l);
    for (Eigen::Index a = 0; a < m; ++a) rotated.row(a) = out.eigen_games[static_cast<std::size_t>(a)].strategies.row(ag);
    out.strategies.push_back(v * rotated);
  }
  return out;
}

std::vector<Matrix> multiasset_direct(const Matrix& q, const Matrix& inventories, double g1,
                                      double theta, const TimeGrid& grid) {
  check_inputs(q, inventories);
  const Eigen::Index m = q.rows();
  const Eigen::Index j = inventories.rows();
  const auto l = static_cast<Eigen::Index>(grid.n_points());
  const Eigen::Index block = m * l;

  const KernelMatrices unit = build_matrices(ConstantKernel{1.0}, grid, 0.0);
  Matrix gt(block, block), gtilde(block, block);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c) {
      gt.block(r * l, c * l, l, l) = g1 * q(r, c) * unit.gamma;
      gtilde.block(r * l, c * l, l, l) = g1 * q(r, c) * unit.gamma_tilde;
    }
  gt.diagonal().array() += 2.0 * theta;

  // Unknowns: xi_j (asset-major), then one multiplier per (agent, asset).
  const Eigen::Index dim = j * block + j * m;
  Matrix kkt = Matrix::Zero(dim, dim);
  Vector rhs = Vector::Zero(dim);
  for (Eigen::Index a = 0; a < j; ++a) {
    for (Eigen::Index b = 0; b < j; ++b)
      kkt.block(a * block, b * block, block, block) = (a == b) ? gt : gtilde;
    for (Eigen::Index s = 0; s < m; ++s) {
      const Eigen::Index mult = j * block + a * m + s;
      kkt.block(a * block + s * l, mult, l, 1).setConstant(-1.0);
      kkt.block(mult, a * block + s * l, 1, l).setConstant(1.0);
      rhs(mult) = inventories(a, s);
    }
  }
  const Vector sol = solve_checked(kkt, rhs, "stacked multi-asset system", 1e-15);

  std::vector<Matrix> out;
  for (Eigen::Index a = 0; a < j; ++a) {
    Matrix s(m, l);
    for (Eigen::Index as = 0; as < m; ++as) s.row(as) = sol.segment(a * block + as * l, l).transpose();
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace impact
