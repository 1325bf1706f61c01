#include "impact/linalg.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "impact/error.hpp"

namespace impact {
namespace {

// Zero pivots make Eigen report rcond as NaN.
std::string rcond_text(double rc) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", std::isnan(rc) ? 0.0 : rc);
  return buf;
}

}  // namespace

Vector solve_checked(const Matrix& a, const Vector& b, const std::string& what, double rcond_min) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw Error(ErrorCode::WrongArity, what + ": dimension mismatch");
  Eigen::PartialPivLU<Matrix> lu(a);
  const double rc = lu.rcond();
  if (!(rc > rcond_min))
    throw Error(ErrorCode::NonsingularityViolation,
                what + " is singular to working precision (rcond " + rcond_text(rc) + ")");
  return lu.solve(b);
}

Matrix inverse_checked(const Matrix& a, const std::string& what, double rcond_min) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::WrongArity, what + ": matrix not square");
  Eigen::PartialPivLU<Matrix> lu(a);
  const double rc = lu.rcond();
  if (!(rc > rcond_min))
    throw Error(ErrorCode::NonsingularityViolation,
                what + " is singular to working precision (rcond " + rcond_text(rc) + ")");
  return lu.inverse();
}

Matrix toeplitz(std::span<const double> g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = g[static_cast<std::size_t>(std::abs(i - j))];
  return m;
}

Matrix toeplitz(const Vector& g) { return toeplitz(std::span<const double>(g.data(), g.size())); }

Vector to_vector(std::span<const double> v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Vector normalize_sum(const Vector& v, const std::string& what) {
  const double s = v.sum();
  if (!(std::abs(s) > 1e-300) || !std::isfinite(s))
    throw Error(ErrorCode::NonsingularityViolation, what + ": normalization sum vanishes");
  return v / s;
}

}  // namespace impact
