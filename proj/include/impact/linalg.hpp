#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace impact {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default absolute tolerance for floating-point comparisons.
inline constexpr double kDefaultTol = 1e-10;

/// Solves A x = b by partial-pivot LU. Throws NonsingularityViolation when the
/// reciprocal condition estimate falls below `rcond_min`; `what` names the system.
Vector solve_checked(const Matrix& a, const Vector& b, const std::string& what,
                     double rcond_min = 1e-14);
Matrix inverse_checked(const Matrix& a, const std::string& what, double rcond_min = 1e-14);

/// Symmetric Toeplitz matrix with first row `g`.
Matrix toeplitz(std::span<const double> g);
Matrix toeplitz(const Vector& g);

Vector to_vector(std::span<const double> v);
std::vector<double> to_std(const Vector& v);

/// v / sum(v); throws when the sum vanishes.
Vector normalize_sum(const Vector& v, const std::string& what);

}  // namespace impact
