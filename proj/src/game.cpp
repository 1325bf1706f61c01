#include "impact/game.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "impact/error.hpp"

namespace impact {
namespace {

void check_game(const GameSpec& spec) {
  if (spec.inventories.size() < 2)
    throw Error(ErrorCode::WrongArity, "a game needs at least two agents");
  if (!(spec.theta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "theta must be non-negative");
  if (spec.theta == 0.0 && std::holds_alternative<ConstantKernel>(spec.kernel))
    throw Error(ErrorCode::SingularityRisk, "constant-kernel game needs theta > 0");
}

void fill_costs_and_multipliers(Equilibrium& eq, const KernelMatrices& mats) {
  const Eigen::Index j = eq.strategies.rows();
  const Vector total = eq.strategies.colwise().sum().transpose();
  eq.expected_costs.resize(j);
  eq.multipliers.resize(j);
  for (Eigen::Index i = 0; i < j; ++i) {
    const Vector own = eq.strategies.row(i).transpose();
    const Vector others = total - own;
    eq.expected_costs(i) = expected_cost(own, others, mats);
    eq.multipliers(i) = (mats.gamma_theta * own + mats.gamma_tilde * others).mean();
  }
}

}  // namespace

std::pair<Vector, Vector> fundamental_solutions(const KernelMatrices& mats) {
  const Vector e = Vector::Ones(mats.size());
  Vector v = solve_checked(mats.gamma_theta + mats.gamma_tilde, e, "Gamma_theta + Gamma_tilde");
  Vector w = solve_checked(mats.gamma_theta - mats.gamma_tilde, e, "Gamma_theta - Gamma_tilde");
  return {normalize_sum(v, "v"), normalize_sum(w, "w")};
}

std::pair<Vector, Vector> constant_kernel_closed_form(double g1, double theta, std::size_t n_steps) {
  if (!(g1 > 0.0)) throw Error(ErrorCode::InvalidArgument, "g1 must be positive");
  if (!(theta > 0.0)) throw Error(ErrorCode::SingularityRisk, "closed form needs theta > 0");
  const double lambda = 2.0 * theta / g1 + 0.5;
  const double a = 1.0 - 1.0 / lambda;
  const auto n = static_cast<Eigen::Index>(n_steps + 1);
  const double lead = 1.0 / (lambda * (1.0 - std::pow(a, static_cast<double>(n))));
  Vector v(n);
  double ak = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    v(k) = ak * lead;
    ak *= a;
  }
  Vector w = v.reverse();
  return {std::move(v), std::move(w)};
}

Equilibrium two_agent_equilibrium(const GameSpec& spec) {
  if (spec.inventories.size() != 2)
    throw Error(ErrorCode::WrongArity, "two-agent equilibrium got " +
                                           std::to_string(spec.inventories.size()) + " agents");
  check_game(spec);
  const KernelMatrices mats = build_matrices(spec.kernel, spec.grid, spec.theta);
  auto [v, w] = fundamental_solutions(mats);

  const double x1 = spec.inventories[0];
  const double x2 = spec.inventories[1];
  Equilibrium eq;
  eq.strategies.resize(2, mats.size());
  eq.strategies.row(0) = (0.5 * (x1 + x2) * v + 0.5 * (x1 - x2) * w).transpose();
  eq.strategies.row(1) = (0.5 * (x1 + x2) * v - 0.5 * (x1 - x2) * w).transpose();
  eq.fundamental_v = std::move(v);
  eq.fundamental_w = std::move(w);
  fill_costs_and_multipliers(eq, mats);
  return eq;
}

Equilibrium multi_agent_equilibrium(const GameSpec& spec) {
  check_game(spec);
  const KernelMatrices mats = build_matrices(spec.kernel, spec.grid, spec.theta);
  const Eigen::Index l = mats.size();
  const auto j = static_cast<Eigen::Index>(spec.inventories.size());
  const Eigen::Index dim = j * l + j;

  Matrix kkt = Matrix::Zero(dim, dim);
  Vector rhs = Vector::Zero(dim);
  for (Eigen::Index a = 0; a < j; ++a) {
    for (Eigen::Index b = 0; b < j; ++b)
      kkt.block(a * l, b * l, l, l) = (a == b) ? mats.gamma_theta : mats.gamma_tilde;
    kkt.block(a * l, j * l + a, l, 1).setConstant(-1.0);
    kkt.block(j * l + a, a * l, 1, l).setConstant(1.0);
    rhs(j * l + a) = spec.inventories[static_cast<std::size_t>(a)];
  }
  const Vector sol = solve_checked(kkt, rhs, "stacked equilibrium system", 1e-15);

  Equilibrium eq;
  eq.strategies.resize(j, l);
  for (Eigen::Index a = 0; a < j; ++a) eq.strategies.row(a) = sol.segment(a * l, l).transpose();
  fill_costs_and_multipliers(eq, mats);
  eq.multipliers = sol.tail(j);
  return eq;
}

double expected_cost(const Vector& own, const Vector& others_sum, const KernelMatrices& mats) {
  if (own.size() != mats.size() || others_sum.size() != mats.size())
    throw Error(ErrorCode::WrongArity, "strategy length does not match the grid");
  return 0.5 * own.dot(mats.gamma_theta * own) + own.dot(mats.gamma_tilde * others_sum);
}

Vector best_response(const Vector& others_sum, const KernelMatrices& mats, double inventory) {
  if (others_sum.size() != mats.size())
    throw Error(ErrorCode::WrongArity, "strategy length does not match the grid");
  Eigen::LLT<Matrix> llt(mats.gamma_theta);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorCode::NonsingularityViolation, "Gamma_theta is not positive definite");
  const Vector y = llt.solve(Vector::Ones(mats.size()));
  const Vector z = llt.solve(mats.gamma_tilde * others_sum);
  const double nu = (inventory + z.sum()) / y.sum();
  return nu * y - z;
}

MyopicOutcome myopic_equilibrium(double g, double theta, double s0, double inventory) {
  if (!(g > 0.0) || !(theta > 0.0) || !(s0 > 0.0))
    throw Error(ErrorCode::Domain, "myopic game needs g, theta, s0 > 0");
  if (!(theta > g / 4.0))
    throw Error(ErrorCode::Domain, "myopic price ratio leaves (0, 1) unless theta > g/4");
  const double floor_ratio = 1.0 - 2.0 * inventory * g / s0;
  if (!(floor_ratio > 0.0))
    throw Error(ErrorCode::Domain, "inventory cannot be liquidated: 1 - 2 X g / s0 = " +
                                       std::to_string(floor_ratio));
  if (!(inventory >= 0.0)) throw Error(ErrorCode::Domain, "myopic inventory must be non-negative");

  MyopicOutcome out;
  out.alpha = 2.0 / (3.0 * g + 4.0 * theta);
  out.price_ratio = 1.0 - 2.0 * out.alpha * g;
  out.n_rounds_exact = std::log(floor_ratio) / std::log(out.price_ratio);

  const double nearest = std::round(out.n_rounds_exact);
  out.n_rounds = static_cast<std::size_t>(
      std::abs(out.n_rounds_exact - nearest) < 1e-9 ? nearest : std::floor(out.n_rounds_exact));

  double price = s0;
  double traded = 0.0;
  for (std::size_t k = 0; k < out.n_rounds; ++k) {
    out.prices.push_back(price);
    out.trades.push_back(out.alpha * price);
    traded += out.alpha * price;
    price *= out.price_ratio;
  }
  const double rest = inventory - traded;
  if (out.trades.empty() || std::abs(rest) > 1e-12 * std::max(1.0, std::abs(inventory))) {
    out.prices.push_back(price);
    out.trades.push_back(rest);
    out.residual_trade = true;
  }

  // A one-trade session still needs a two-point grid; the padding is a zero trade.
  const KernelMatrices mats =
      constant_kernel_matrices(g, theta, std::max<std::size_t>(1, out.trades.size() - 1));
  Vector xi = Vector::Zero(mats.size());
  for (std::size_t k = 0; k < out.trades.size(); ++k) xi(static_cast<Eigen::Index>(k)) = out.trades[k];
  out.total_cost = expected_cost(xi, xi, mats);
  return out;
}

MyopicComparison compare_myopic(double g, double theta, double s0, double inventory,
                                std::size_t n_steps) {
  MyopicComparison cmp;
  cmp.myopic = myopic_equilibrium(g, theta, s0, inventory);
  const std::size_t points = std::max(n_steps + 1, cmp.myopic.trades.size());

  GameSpec spec;
  spec.grid = TimeGrid::equidistant(1.0, points - 1);
  spec.kernel = ConstantKernel{g};
  spec.theta = theta;
  spec.inventories = {inventory, inventory};
  cmp.equilibrium = two_agent_equilibrium(spec);

  const KernelMatrices mats = build_matrices(spec.kernel, spec.grid, theta);
  cmp.myopic_padded = Vector::Zero(mats.size());
  for (std::size_t k = 0; k < cmp.myopic.trades.size(); ++k)
    cmp.myopic_padded(static_cast<Eigen::Index>(k)) = cmp.myopic.trades[k];
  cmp.myopic_cost = expected_cost(cmp.myopic_padded, cmp.myopic_padded, mats);
  cmp.equilibrium_cost = cmp.equilibrium.expected_costs(0);
  return cmp;
}

ShapeReport shape_report(const Vector& xi, double tol) {
  const Eigen::Index n = xi.size();
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "shape report needs at least 3 entries");
  ShapeReport r;
  r.symmetric = (xi - xi.reverse()).cwiseAbs().maxCoeff() <= tol;
  // Sign and monotonicity are strict: the interior of a sharply U-shaped
  // schedule can sit far below any fixed tolerance and still be resolved.
  r.positive = (xi.array() > 0.0).all();

  const Eigen::Index head = std::max<Eigen::Index>(2, n / 2);
  r.decreasing_first_half = true;
  for (Eigen::Index k = 1; k < head; ++k)
    if (!(xi(k) < xi(k - 1))) r.decreasing_first_half = false;

  r.convex = true;
  for (Eigen::Index k = 1; k + 1 < n; ++k)
    if (xi(k - 1) - 2.0 * xi(k) + xi(k + 1) < -tol) r.convex = false;
  return r;
}

}  // namespace impact
