#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "impact/grid.hpp"
#include "impact/kernel.hpp"
#include "impact/linalg.hpp"
#include "impact/matrices.hpp"

namespace impact {

struct GameSpec {
  TimeGrid grid = TimeGrid::equidistant(1.0, 25);
  KernelSpec kernel = ConstantKernel{1.0};
  double theta = 1.0;
  std::vector<double> inventories{1.0, 0.0};
};

struct Equilibrium {
  Matrix strategies;  // one row per agent, one column per trading time
  std::optional<Vector> fundamental_v;
  std::optional<Vector> fundamental_w;
  Vector multipliers;
  Vector expected_costs;

  std::size_t n_agents() const { return static_cast<std::size_t>(strategies.rows()); }
  Vector row(std::size_t agent) const { return strategies.row(static_cast<Eigen::Index>(agent)); }
};

struct MyopicOutcome {
  double alpha = 0.0;
  double price_ratio = 0.0;  // 1 - 2 alpha G
  std::vector<double> trades;
  std::vector<double> prices;  // expected price at the start of each round
  double n_rounds_exact = 0.0;
  std::size_t n_rounds = 0;   // complete geometric rounds
  bool residual_trade = false;  // last trade clears what the rounds left
  double total_cost = 0.0;      // expected cost of one agent
};

struct ShapeReport {
  bool symmetric = false;
  bool positive = false;
  bool decreasing_first_half = false;
  bool convex = false;

  bool u_shaped() const { return symmetric && positive && decreasing_first_half && convex; }
};

/// v = (Gt + Gtilde)^{-1} e and w = (Gt - Gtilde)^{-1} e, each normalized to sum 1.
std::pair<Vector, Vector> fundamental_solutions(const KernelMatrices& mats);

/// Explicit v, w for the constant kernel: v_n = a^(n-1) / (lambda (1 - a^(N+1))),
/// lambda = 2 theta / g1 + 1/2, a = 1 - 1/lambda; w is v reversed.
std::pair<Vector, Vector> constant_kernel_closed_form(double g1, double theta, std::size_t n_steps);

/// Two agents: xi_{1,2} = (X1 + X2)/2 v +- (X1 - X2)/2 w.
Equilibrium two_agent_equilibrium(const GameSpec& spec);

/// J >= 2 agents by one dense solve of the stacked first-order conditions
///   Gt xi_i + Gtilde sum_{j != i} xi_j = nu_i e,   e^T xi_i = X_i.
Equilibrium multi_agent_equilibrium(const GameSpec& spec);

/// 1/2 own^T Gt own + own^T Gtilde others_sum.
double expected_cost(const Vector& own, const Vector& others_sum, const KernelMatrices& mats);

/// Minimizer of expected_cost over e^T xi = inventory.
Vector best_response(const Vector& others_sum, const KernelMatrices& mats, double inventory);

/// Both agents trade alpha S_k each round with alpha = 2 / (3g + 4 theta), so the
/// expected price decays as S_{k+1} = (1 - 2 alpha g) S_k.
MyopicOutcome myopic_equilibrium(double g, double theta, double s0, double inventory);

struct MyopicComparison {
  MyopicOutcome myopic;
  Equilibrium equilibrium;  // both agents holding `inventory`
  Vector myopic_padded;     // myopic trades on the comparison grid
  double myopic_cost = 0.0;
  double equilibrium_cost = 0.0;
};

/// Myopic pair against the equilibrium pair with the same inventories, on a
/// grid of max(n_steps + 1, rounds) points. Myopic trades are zero-padded.
MyopicComparison compare_myopic(double g, double theta, double s0, double inventory,
                                std::size_t n_steps = 25);

/// positive and decreasing_first_half are strict; tol is slack for symmetric and convex.
ShapeReport shape_report(const Vector& xi, double tol = kDefaultTol);

}  // namespace impact
