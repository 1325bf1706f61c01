#pragma once

#include <string>
#include <vector>

#include "impact/game.hpp"
#include "impact/grid.hpp"
#include "impact/linalg.hpp"

namespace impact {

/// Q = V diag(D) V^T with D descending and each column of V signed so that its
/// largest-magnitude entry is positive.
struct CrossImpact {
  Matrix q;
  Matrix eigenvectors;
  Vector eigenvalues;
};

CrossImpact eigendecompose(const Matrix& q);

struct MultiAssetEquilibrium {
  CrossImpact cross;
  std::vector<Matrix> strategies;          // per agent: assets x trading times
  std::vector<Equilibrium> eigen_games;    // one-asset game per eigenvalue
  Matrix rotated_inventories;              // agents x eigen-directions
  std::vector<std::string> warnings;
};

/// inventories: agents x assets. Each eigen-direction l is a one-asset game with
/// constant kernel g1 * D_l; strategies are rotated back with V.
MultiAssetEquilibrium multiasset_equilibrium(const Matrix& q, const Matrix& inventories,
                                             double g1, double theta, const TimeGrid& grid);

/// Same equilibrium in original coordinates: one stacked solve with
/// Gamma_theta = g1 (Q kron e e^T) + 2 theta I and Gamma_tilde = g1 (Q kron Gamma_tilde_1).
std::vector<Matrix> multiasset_direct(const Matrix& q, const Matrix& inventories, double g1,
                                      double theta, const TimeGrid& grid);

}  // namespace impact
