#include <doctest.h>

#include <cmath>

#include "impact/error.hpp"
#include "impact/game.hpp"
#include "impact/implied_price.hpp"
#include "oracles.hpp"

using namespace impact;
using oracle::max_abs;

namespace {

// Lower-triangular Toeplitz M(k, j) = flows(k - j), assembled densely.
Matrix flow_matrix(const Vector& flows) {
  const Eigen::Index n = flows.size();
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index j = 0; j <= k; ++j) m(k, j) = flows(k - j);
  return m;
}

struct PriceCase {
  Equilibrium eq;
  Vector aggregate;
  Vector drift;
};

PriceCase price_case(std::vector<double> inventories) {
  PriceCase c;
  c.eq = oracle::constant_game(1.0, 1.0, 25, std::move(inventories));
  c.aggregate = c.eq.strategies.colwise().sum().transpose();
  c.drift = aggregate_drift(constant_kernel_matrices(1.0, 1.0, 25), c.aggregate);
  return c;
}

}  // namespace

TEST_CASE("aggregate drift basics") {
  const auto m = constant_kernel_matrices(1.5, 1.0, 6);
  CHECK(max_abs(aggregate_drift(m, Vector::Zero(7))) == 0.0);
  Vector unit = Vector::Zero(7);
  unit(0) = 1.0;
  CHECK(max_abs(aggregate_drift(m, unit) + Vector::Constant(7, 1.5)) == 0.0);
  CHECK_THROWS_AS(aggregate_drift(m, Vector::Zero(6)), Error);
}

TEST_CASE("drift under a constant kernel follows the aggregate flow") {
  const auto c = price_case({1.0, 0.0});
  CHECK(c.drift(25) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(c.drift(0) == doctest::Approx(-c.aggregate(0)));
  for (Eigen::Index k = 1; k < 26; ++k)
    CHECK(c.drift(k) - c.drift(k - 1) == doctest::Approx(-c.aggregate(k)).epsilon(1e-12));
}

TEST_CASE("round trip recovers tabulated kernels") {
  oracle::Rng rng(99);
  const auto grid = TimeGrid::equidistant(1.0, 25);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> g(26);
    for (double& v : g) v = rng.uniform(-1.0, 2.0);
    const KernelSpec k = TabulatedKernel::on_grid(grid, g);
    // Keep the flow matrix well conditioned: forward substitution amplifies
    // errors once the later flows outweigh the first one.
    Vector flows = 0.02 * rng.normal_vector(26);
    flows(0) = (trial % 2 ? 1.0 : -1.0) * rng.uniform(0.5, 1.5);
    const Vector drift = aggregate_drift(build_matrices(k, grid, 0.3), flows);
    const ImpliedKernel out = implied_kernel_price(flows, drift);
    CHECK(max_abs(out.g - to_vector(g)) <= 1e-12);
    CHECK(out.diagnostics.at("residual") <= 1e-12);
  }
}

TEST_CASE("implied kernel is linear in the drift") {
  oracle::Rng rng(5);
  const auto c = price_case({1.0, 0.0});
  const Vector flows = c.eq.row(0);
  const ImpliedKernel base = implied_kernel_price(flows, c.drift);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector delta = 1e-3 * rng.normal_vector(26);
    const ImpliedKernel moved = implied_kernel_price(flows, c.drift + delta);
    const Vector expect = -oracle::dense_solve(flow_matrix(flows), delta);
    CHECK(max_abs(moved.g - base.g - expect) <= 1e-10);
  }
}

TEST_CASE("singular first flow is rejected") {
  Vector flows = Vector::Ones(5);
  flows(0) = 0.0;
  try {
    implied_kernel_price(flows, Vector::Ones(5));
    FAIL("zero first flow accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularFlow);
  }
  flows(0) = 1e-14;
  CHECK_THROWS_AS(implied_kernel_price(flows, Vector::Ones(5)), Error);
  CHECK_THROWS_AS(implied_kernel_price(Vector::Ones(5), Vector::Ones(4)), Error);
}

TEST_CASE("price approach on the constant-kernel games") {
  const auto two = price_case({1.0, 0.0});
  const auto three = price_case({1.0, 0.0, 0.0});
  const auto five = price_case({1.0, 0.0, 0.0, 0.0, 0.0});

  // The aggregate flow recovers the true kernel.
  const ImpliedKernel truth = implied_kernel_price(two.aggregate, two.drift);
  CHECK(max_abs(truth.g - Vector::Ones(26)) <= 1e-12);

  const ImpliedKernel k2 = implied_kernel_price(two.eq.row(0), two.drift);
  const ImpliedKernel k3 = implied_kernel_price(three.eq.row(0), three.drift);
  const ImpliedKernel k5 = implied_kernel_price(five.eq.row(0), five.drift);
  CHECK(k2.g(0) == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(k3.g(0) == doctest::Approx(3.0).epsilon(1e-4));
  CHECK(k5.g(0) == doctest::Approx(5.0).epsilon(1e-4));
  // g_0 = v_0 / xi_0 = 2 / (1 + a^N) for two agents.
  CHECK(k2.g(0) == doctest::Approx(2.0 / (1.0 + std::pow(0.6, 25))).epsilon(1e-13));

  for (const auto* k : {&k2, &k3, &k5}) CHECK(k->g.maxCoeff() - k->g.minCoeff() > 0.1);

  const ImpliedKernel u2 = scale_to_unit(k2);
  const ImpliedKernel u5 = scale_to_unit(k5);
  CHECK(u2.g(0) == 1.0);
  CHECK(u2.diagnostics.at("scale") == k2.g(0));
  CHECK(1.0 - u5.g(1) > 1.0 - u2.g(1));
  Eigen::Index a1 = 0, a2 = 0;
  k2.g.maxCoeff(&a1);
  u2.g.maxCoeff(&a2);
  CHECK(a1 == a2);
}

TEST_CASE("scale_to_unit rejects a zero value at lag zero") {
  ImpliedKernel k;
  k.g = Vector::Zero(3);
  try {
    scale_to_unit(k);
    FAIL("zero scale accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Scale);
  }
}

TEST_CASE("flat-flow variant") {
  const auto two = price_case({1.0, 0.0});
  const ImpliedKernel ac = ac_flow_variant(two.drift, 1.0, 25);
  CHECK(ac.provenance == Provenance::AcFlowVariant);
  CHECK(ac.g(0) == doctest::Approx(26.0 * two.aggregate(0)).epsilon(1e-10));
  CHECK(ac.g.minCoeff() > 0.0);
  for (Eigen::Index k = 1; k < 26; ++k) CHECK(ac.g(k) <= ac.g(k - 1) + 1e-12);
  CHECK(max_abs(ac_flow_variant(Vector::Zero(26), 1.0, 25).g) == 0.0);
  CHECK_THROWS_AS(ac_flow_variant(two.drift, 0.0, 25), Error);
}
