#pragma once

// Reference computations used only by the tests. They are deliberately
// naive: full-pivot LU, brute-force loops, finite differences.

#include <cstdint>
#include <random>

#include "impact/game.hpp"
#include "impact/linalg.hpp"

namespace oracle {

using impact::Matrix;
using impact::Vector;

inline Matrix dense_inverse(const Matrix& a) { return a.fullPivLu().inverse(); }

inline Vector dense_solve(const Matrix& a, const Vector& b) { return a.fullPivLu().solve(b); }

inline double max_abs(const Matrix& a) { return a.cwiseAbs().maxCoeff(); }

// Pi xi entry by entry for Pi(i, j) = g_{|i-j|}.
inline Vector toeplitz_times(const Vector& g, const Vector& xi) {
  const Eigen::Index n = xi.size();
  Vector out = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i) += g(std::abs(i - j)) * xi(j);
  return out;
}

// Constant-kernel game equilibrium on the unit grid.
inline impact::Equilibrium constant_game(double g1, double theta, std::size_t n_steps,
                                         std::vector<double> inventories) {
  impact::GameSpec spec;
  spec.grid = impact::TimeGrid::equidistant(1.0, n_steps);
  spec.kernel = impact::ConstantKernel{g1};
  spec.theta = theta;
  spec.inventories = std::move(inventories);
  return spec.inventories.size() == 2 ? impact::two_agent_equilibrium(spec)
                                      : impact::multi_agent_equilibrium(spec);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  Vector normal_vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index k = 0; k < n; ++k) v(k) = normal();
    return v;
  }
  // Unit-norm vector with zero sum.
  Vector zero_sum_direction(Eigen::Index n) {
    Vector v = normal_vector(n);
    v.array() -= v.mean();
    return v / v.norm();
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace oracle
