#include <doctest.h>

#include <cmath>

#include "impact/error.hpp"
#include "impact/multiasset.hpp"
#include "oracles.hpp"

using namespace impact;
using oracle::max_abs;

namespace {

const TimeGrid kGrid = TimeGrid::equidistant(1.0, 25);

Matrix mat(Eigen::Index r, Eigen::Index c, std::initializer_list<double> xs) {
  Matrix m(r, c);
  Eigen::Index k = 0;
  for (double x : xs) m(k / c, k % c) = x, ++k;
  return m;
}

Matrix random_spd(oracle::Rng& rng, Eigen::Index m) {
  Matrix a(m, m);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = rng.normal();
  return a * a.transpose() + 0.5 * Matrix::Identity(m, m);
}

Matrix random_inventories(oracle::Rng& rng, Eigen::Index agents, Eigen::Index assets) {
  Matrix x(agents, assets);
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(-1.0, 1.0);
  return x;
}

}  // namespace

TEST_CASE("eigendecomposition") {
  const CrossImpact id = eigendecompose(Matrix::Identity(3, 3));
  CHECK(max_abs(id.eigenvalues - Vector::Ones(3)) <= 1e-15);

  const CrossImpact c = eigendecompose(mat(2, 2, {2, 1, 1, 2}));
  CHECK(c.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(c.eigenvalues(1) == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(c.eigenvectors.col(0) - Vector::Constant(2, r)) <= 1e-14);
  CHECK(std::abs(c.eigenvectors.col(1).dot(Vector::Ones(2))) <= 1e-14);

  oracle::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix q = random_spd(rng, 4);
    const CrossImpact d = eigendecompose(q);
    CHECK(max_abs(d.eigenvectors * d.eigenvalues.asDiagonal() * d.eigenvectors.transpose() - q) <= 1e-12);
    CHECK(max_abs(d.eigenvectors.transpose() * d.eigenvectors - Matrix::Identity(4, 4)) <= 1e-12);
    for (Eigen::Index l = 0; l < 4; ++l) {
      Eigen::Index at = 0;
      d.eigenvectors.col(l).cwiseAbs().maxCoeff(&at);
      CHECK(d.eigenvectors(at, l) > 0.0);
      if (l > 0) CHECK(d.eigenvalues(l) <= d.eigenvalues(l - 1));
    }
  }

  try {
    eigendecompose(mat(2, 2, {1, 2, 2, 1}));
    FAIL("indefinite matrix accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
  }
  CHECK_THROWS_AS(eigendecompose(mat(2, 2, {2, 1, 0, 2})), Error);
}

TEST_CASE("diagonal cross impact decouples the assets") {
  const Matrix q = mat(2, 2, {2, 0, 0, 0.5});
  const Matrix inv = mat(2, 2, {1, 0.3, -0.2, 0.7});
  const auto eq = multiasset_equilibrium(q, inv, 1.0, 1.0, kGrid);
  for (Eigen::Index asset = 0; asset < 2; ++asset) {
    GameSpec spec;
    spec.grid = kGrid;
    spec.kernel = ConstantKernel{q(asset, asset)};
    spec.theta = 1.0;
    spec.inventories = {inv(0, asset), inv(1, asset)};
    const auto one = two_agent_equilibrium(spec);
    for (std::size_t a = 0; a < 2; ++a)
      CHECK(max_abs(Vector(eq.strategies[a].row(asset).transpose()) - one.row(a)) <= 1e-12);
  }
}

TEST_CASE("eigen-inventory gives a rescaled one-asset game") {
  const Matrix q = mat(2, 2, {2, 1, 1, 2});
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix inv = mat(2, 2, {r, r, 0, 0});
  const auto eq = multiasset_equilibrium(q, inv, 1.0, 1.0, kGrid);
  const auto one = oracle::constant_game(3.0, 1.0, 25, {1.0, 0.0});
  CHECK(eq.warnings.empty());
  for (std::size_t a = 0; a < 2; ++a)
    for (Eigen::Index asset = 0; asset < 2; ++asset)
      CHECK(max_abs(Vector(eq.strategies[a].row(asset).transpose()) - r * one.row(a)) <= 1e-12);
}

TEST_CASE("spectral and direct solutions agree") {
  oracle::Rng rng(12);
  for (Eigen::Index m : {2, 3})
    for (Eigen::Index j : {2, 3}) {
      const Matrix q = random_spd(rng, m);
      const Matrix inv = random_inventories(rng, j, m);
      const double theta = 0.3 * q.eigenvalues().real().maxCoeff();
      const auto eq = multiasset_equilibrium(q, inv, 1.0, theta, kGrid);
      const auto direct = multiasset_direct(q, inv, 1.0, theta, kGrid);
      REQUIRE(direct.size() == static_cast<std::size_t>(j));
      for (Eigen::Index a = 0; a < j; ++a) {
        CHECK(max_abs(eq.strategies[a] - direct[a]) <= 1e-10);
        CHECK(max_abs(eq.strategies[a].rowwise().sum() - inv.row(a).transpose()) <= 1e-12);
      }
    }
}

TEST_CASE("symmetric inventories give identical strategies") {
  oracle::Rng rng(4);
  for (Eigen::Index m : {2, 3}) {
    const Matrix q = random_spd(rng, m);
    Matrix inv(2, m);
    inv.row(0) = rng.normal_vector(m).transpose();
    inv.row(1) = inv.row(0);
    const auto eq = multiasset_equilibrium(q, inv, 1.0, 2.0 * q.eigenvalues().real().maxCoeff(), kGrid);
    CHECK(max_abs(eq.strategies[0] - eq.strategies[1]) <= 1e-12);
    CHECK(max_abs(eq.strategies[0].rowwise().sum() - inv.row(0).transpose()) <= 1e-12);
  }
}

TEST_CASE("warning below the per-direction stability threshold") {
  const Matrix q = mat(2, 2, {2, 1, 1, 2});
  const Matrix inv = mat(2, 2, {1, 0, 0, 0});
  // lambda = 3, threshold 0.75; lambda = 1, threshold 0.25.
  CHECK(multiasset_equilibrium(q, inv, 1.0, 0.5, kGrid).warnings.size() == 1);
  CHECK(multiasset_equilibrium(q, inv, 1.0, 0.1, kGrid).warnings.size() == 2);
  CHECK(multiasset_equilibrium(q, inv, 1.0, 1.0, kGrid).warnings.empty());
  CHECK_THROWS_AS(multiasset_equilibrium(q, Matrix::Ones(2, 3), 1.0, 1.0, kGrid), Error);
}
