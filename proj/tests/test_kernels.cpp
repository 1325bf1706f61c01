#include <doctest.h>

#include <cmath>

#include "impact/error.hpp"
#include "impact/grid.hpp"
#include "impact/kernel.hpp"
#include "impact/matrices.hpp"
#include "oracles.hpp"

using namespace impact;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an impact::Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("time grid validation") {
  const auto g = TimeGrid::equidistant(2.0, 4);
  CHECK(g.n_points() == 5);
  CHECK(g.horizon() == doctest::Approx(2.0));
  CHECK(g.equidistant());
  CHECK(g.step() == doctest::Approx(0.5));

  const auto h = TimeGrid::from_times({0.0, 0.1, 0.5, 1.0});
  CHECK_FALSE(h.equidistant());
  CHECK(code_of([&] { (void)h.step(); }) == ErrorCode::InvalidArgument);
  CHECK(TimeGrid::from_times({0.0, 0.5, 1.0}).equidistant());

  CHECK(code_of([] { TimeGrid::from_times({0.1, 0.5}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { TimeGrid::from_times({0.0, 0.5, 0.5}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { TimeGrid::from_times({0.0}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { TimeGrid::equidistant(1.0, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { TimeGrid::equidistant(-1.0, 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("kernel evaluation") {
  CHECK(eval_kernel(ConstantKernel{1.0}, 0.37) == 1.0);
  CHECK(eval_kernel(LinearKernel{6.6667, -6.6667}, 1.0) == doctest::Approx(0.0));
  CHECK(eval_kernel(ExponentialKernel{193.7472, 0.0357, -3.0}, 0.0) == doctest::Approx(190.7472));
  CHECK(eval_kernel(PowerLawKernel{2.0, 0.5, 1.0}, 0.0) == doctest::Approx(3.0));
  CHECK(eval_kernel(PowerLawKernel{2.0, 0.5, 0.0}, 3.0) == doctest::Approx(1.0));

  const auto grid = TimeGrid::equidistant(1.0, 4);
  const KernelSpec tab = TabulatedKernel::on_grid(grid, {4, 3, 2, 1, 0});
  CHECK(eval_kernel(tab, 0.5) == 2.0);
  CHECK(eval_kernel(tab, 0.75 + 1e-14) == 1.0);
  CHECK(code_of([&] { eval_kernel(tab, 0.3); }) == ErrorCode::LagMismatch);
  CHECK(code_of([&] { eval_kernel(tab, 2.0); }) == ErrorCode::LagMismatch);
  CHECK(code_of([] { eval_kernel(ConstantKernel{1.0}, -0.1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { TabulatedKernel::on_grid(grid, {1, 2}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("stability threshold") {
  CHECK(stability_threshold(ConstantKernel{1.0}) == 0.25);
  CHECK(stability_threshold(ConstantKernel{4.0}) == 1.0);
  CHECK(stability_threshold(ExponentialKernel{1.0, 1.0, 0.0}) == 0.25);
}

TEST_CASE("shift and scale act on every family") {
  const std::vector<KernelSpec> specs{ConstantKernel{1.5}, LinearKernel{2.0, -1.0},
                                      ExponentialKernel{2.0, 0.7, 0.1}, PowerLawKernel{3.0, 0.4, -0.2},
                                      TabulatedKernel{{0.0, 0.5, 1.0}, {3.0, 2.0, 1.5}}};
  for (const auto& s : specs) {
    for (double t : {0.0, 0.5, 1.0}) {
      CHECK(eval_kernel(shifted(s, 0.3), t) == doctest::Approx(eval_kernel(s, t) + 0.3));
      CHECK(eval_kernel(scaled(s, 2.5), t) == doctest::Approx(eval_kernel(s, t) * 2.5));
    }
  }
  CHECK(family_name(specs[3]) == "power_law");
}

TEST_CASE("build_matrices: constant kernel, N = 1") {
  const auto m = build_matrices(ConstantKernel{1.0}, TimeGrid::equidistant(1.0, 1), 1.0);
  Matrix g(2, 2), gt(2, 2), tl(2, 2);
  g << 1, 1, 1, 1;
  gt << 3, 1, 1, 3;
  tl << 0.5, 0, 1, 0.5;
  CHECK(oracle::max_abs(m.gamma - g) == 0.0);
  CHECK(oracle::max_abs(m.gamma_theta - gt) == 0.0);
  CHECK(oracle::max_abs(m.gamma_tilde - tl) == 0.0);
  CHECK(code_of([] { build_matrices(ConstantKernel{1.0}, TimeGrid::equidistant(1.0, 1), -1.0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("build_matrices: linear kernel entries") {
  const double alpha = 1.3, beta = -0.7;
  const std::size_t n = 8;
  const auto m = build_matrices(LinearKernel{alpha, beta}, TimeGrid::equidistant(1.0, n), 0.0);
  for (Eigen::Index i = 0; i <= static_cast<Eigen::Index>(n); ++i)
    for (Eigen::Index j = 0; j <= static_cast<Eigen::Index>(n); ++j)
      CHECK(m.gamma(i, j) ==
            doctest::Approx(beta * static_cast<double>(std::abs(i - j)) / n + alpha).epsilon(1e-14));
}

TEST_CASE("matrix invariants for every family") {
  const auto grid = TimeGrid::equidistant(2.0, 12);
  std::vector<double> tab(grid.n_points());
  for (std::size_t k = 0; k < tab.size(); ++k) tab[k] = 1.0 / (1.0 + static_cast<double>(k * k));
  const std::vector<KernelSpec> specs{ConstantKernel{0.8}, LinearKernel{2.0, -0.5},
                                      ExponentialKernel{1.0, 1.5, 0.2}, PowerLawKernel{1.0, 0.3, 0.1},
                                      TabulatedKernel::on_grid(grid, tab)};
  for (const auto& s : specs) {
    const auto m = build_matrices(s, grid, 0.7);
    const Eigen::Index n = m.size();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        CHECK(m.gamma(i, j) == m.gamma(j, i));
        if (i > 0 && j > 0) CHECK(m.gamma(i, j) == m.gamma(i - 1, j - 1));
      }
    CHECK(oracle::max_abs(m.gamma_tilde + m.gamma_tilde.transpose() - m.gamma) <= 1e-14);
    const Matrix upper = m.gamma_theta - m.gamma_tilde;
    CHECK(oracle::max_abs(Matrix(upper.triangularView<Eigen::StrictlyLower>())) == 0.0);
    CHECK(upper(0, 0) == doctest::Approx(0.5 * eval_kernel(s, 0.0) + 1.4));
  }
}

TEST_CASE("non-equidistant grid uses pairwise lags") {
  const auto grid = TimeGrid::from_times({0.0, 0.1, 0.4, 1.0});
  const auto m = build_matrices(LinearKernel{1.0, -0.5}, grid, 0.0);
  CHECK(m.gamma(1, 3) == doctest::Approx(1.0 - 0.5 * 0.9));
  CHECK(m.gamma(2, 0) == doctest::Approx(1.0 - 0.5 * 0.4));
}

TEST_CASE("constant kernel eigenstructure") {
  const double g1 = 1.7, theta = 0.6;
  const std::size_t n = 9;
  const auto m = constant_kernel_matrices(g1, theta, n);
  const Vector e = Vector::Ones(m.size());
  CHECK(oracle::max_abs(m.gamma_theta * e - (g1 * (n + 1) + 2 * theta) * e) <= 1e-12);
  oracle::Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector x = rng.zero_sum_direction(m.size());
    CHECK(oracle::max_abs(m.gamma_theta * x - 2 * theta * x) <= 1e-12);
  }
}

TEST_CASE("closed-form inverses: 2x2 by hand") {
  // lambda = 2.5; Gt - Gtilde = [[2.5, 1], [0, 2.5]].
  const auto [minus, plus] = closed_form_inverses(1.0, 1.0, 1);
  Matrix expect(2, 2);
  expect << 0.4, -0.16, 0.0, 0.4;
  CHECK(oracle::max_abs(minus - expect) <= 1e-15);
  // Gt + Gtilde = [[3.5, 1], [2, 3.5]], det = 10.25.
  Matrix plus_expect(2, 2);
  plus_expect << 3.5, -1.0, -2.0, 3.5;
  CHECK(oracle::max_abs(plus - plus_expect / 10.25) <= 1e-15);
}

TEST_CASE("closed-form inverses agree with the dense solver") {
  for (std::size_t n : {1u, 5u, 25u})
    for (double theta : {0.25 + 1e-9, 1.0, 10.0})
      for (double g1 : {0.5, 1.0, 2.0}) {
        const auto m = constant_kernel_matrices(g1, theta, n);
        const auto [minus, plus] = closed_form_inverses(g1, theta, n);
        const Matrix a_minus = m.gamma_theta - m.gamma_tilde;
        const Matrix a_plus = m.gamma_theta + m.gamma_tilde;
        CHECK(oracle::max_abs(minus - oracle::dense_inverse(a_minus)) <= 1e-10);
        CHECK(oracle::max_abs(plus - oracle::dense_inverse(a_plus)) <= 1e-10);
        const Matrix id = Matrix::Identity(m.size(), m.size());
        CHECK(oracle::max_abs(minus * a_minus - id) <= 1e-12);
        CHECK(oracle::max_abs(plus * a_plus - id) <= 1e-12);
      }
}

TEST_CASE("closed-form inverses reject theta <= 0") {
  CHECK(code_of([] { closed_form_inverses(1.0, 0.0, 5); }) == ErrorCode::SingularityRisk);
  CHECK(code_of([] { closed_form_inverses(1.0, -1.0, 5); }) == ErrorCode::SingularityRisk);
}

TEST_CASE("linear kernel inverse") {
  for (double horizon : {1.0, 2.5})
    for (std::size_t n : {1u, 2u, 10u, 25u}) {
      const double alpha = 1.0, beta = -0.5;
      const auto m = build_matrices(LinearKernel{alpha, beta}, TimeGrid::equidistant(horizon, n), 0.0);
      const Matrix inv = linear_kernel_inverse(alpha, beta, n, horizon);
      CHECK(oracle::max_abs(inv * m.gamma - Matrix::Identity(m.size(), m.size())) <= 1e-10);
      CHECK(oracle::max_abs(inv - oracle::dense_inverse(m.gamma)) <= 1e-10);
      CHECK(oracle::max_abs(inv - inv.transpose()) == 0.0);
      const Vector y = inv * Vector::Ones(m.size());
      Vector expect = Vector::Zero(m.size());
      expect(0) = expect(m.size() - 1) = 0.5;
      CHECK(oracle::max_abs(y / y.sum() - expect) <= 1e-12);
    }
  CHECK(code_of([] { linear_kernel_inverse(1.0, 0.0, 10); }) == ErrorCode::DegenerateKernel);
  // 2 alpha + beta T = 0 makes Gamma singular.
  CHECK(code_of([] { linear_kernel_inverse(1.0, -2.0, 10); }) == ErrorCode::DegenerateKernel);
}
