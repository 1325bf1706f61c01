#include "impact/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/math/distributions/students_t.hpp>

#include "impact/error.hpp"
#include "impact/implied_exec.hpp"

namespace impact {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRhoMin = 1e-10;
constexpr double kPowerMax = 1.0 - 1e-8;

struct Schedule {
  Vector eta;
  Matrix jac;  // d eta / d g, one column per lag
};

// TIM schedule of Toep(g) + 2 theta I and, optionally, its derivative in g.
// d(Toep(g))/dg_l y is column l of H(y), hence dy = -Gt^{-1} H(y).
Schedule schedule_of(const Vector& g, double theta, double inventory, bool with_jac) {
  Matrix gt = toeplitz(g);
  gt.diagonal().array() += 2.0 * theta;
  Eigen::PartialPivLU<Matrix> lu(gt);
  if (!(lu.rcond() > 1e-14))
    throw Error(ErrorCode::NonsingularityViolation, "fitted Gamma_theta is singular");
  const Vector y = lu.solve(Vector::Ones(g.size()));
  const double s = y.sum();
  if (!(std::abs(s) > 1e-300) || !std::isfinite(s))
    throw Error(ErrorCode::NonsingularityViolation, "e^T Gt^{-1} e vanishes");
  Schedule out;
  out.eta = inventory * y / s;
  if (with_jac) {
    const Matrix dy = -lu.solve(build_h(y).h);
    const Eigen::RowVectorXd ds = dy.colwise().sum();
    out.jac = inventory * (dy / s - y * ds / (s * s));
  }
  return out;
}

struct FamilyEval {
  Vector g;
  Matrix dg;  // lags x params
  double intercept = 0.0;
};

FamilyEval eval_family(FitFamily fam, const std::vector<double>& p, const TimeGrid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.n_points());
  const double tt = grid.horizon();
  FamilyEval f;
  f.g.resize(n);
  f.dg.resize(n, 2);
  switch (fam) {
    case FitFamily::Polynomial: {
      const double a2 = p[0], a1 = p[1];
      f.intercept = -a2 * tt * tt - a1 * tt;
      for (Eigen::Index k = 0; k < n; ++k) {
        const double t = grid[static_cast<std::size_t>(k)];
        f.g(k) = a2 * t * t + a1 * t + f.intercept;
        f.dg(k, 0) = t * t - tt * tt;
        f.dg(k, 1) = t - tt;
      }
      break;
    }
    case FitFamily::Exponential: {
      const double lam = p[0], rho = p[1];
      const double et = std::exp(-rho * tt);
      f.intercept = -lam * et;
      for (Eigen::Index k = 0; k < n; ++k) {
        const double t = grid[static_cast<std::size_t>(k)];
        const double ek = std::exp(-rho * t);
        f.g(k) = lam * ek + f.intercept;
        f.dg(k, 0) = ek - et;
        f.dg(k, 1) = lam * (-t * ek + tt * et);
      }
      break;
    }
    case FitFamily::PowerLaw: {
      const double pw = p[0], b = p[1];
      const double qt = std::pow(1.0 + tt, pw - 1.0);
      f.intercept = -b * qt;
      for (Eigen::Index k = 0; k < n; ++k) {
        const double t = grid[static_cast<std::size_t>(k)];
        const double qk = std::pow(1.0 + t, pw - 1.0);
        f.g(k) = b * qk + f.intercept;
        f.dg(k, 0) = b * (qk * std::log1p(t) - qt * std::log1p(tt));
        f.dg(k, 1) = qk - qt;
      }
      break;
    }
  }
  return f;
}

void project(FitFamily fam, std::vector<double>& p) {
  if (fam == FitFamily::Exponential) p[1] = std::max(p[1], kRhoMin);
  if (fam == FitFamily::PowerLaw) p[0] = std::min(p[0], kPowerMax);
}

KernelSpec family_kernel(FitFamily fam, const std::vector<double>& p, double intercept,
                         const TimeGrid& grid) {
  switch (fam) {
    case FitFamily::Polynomial: {
      // A quadratic is not one of the closed families; tabulate it on the grid.
      std::vector<double> vals;
      for (double t : grid.times()) vals.push_back(p[0] * t * t + p[1] * t + intercept);
      return TabulatedKernel::on_grid(grid, std::move(vals));
    }
    case FitFamily::Exponential: return ExponentialKernel{p[0], p[1], intercept};
    case FitFamily::PowerLaw: return PowerLawKernel{p[1], p[0], intercept};
  }
  return ConstantKernel{};
}

double rss_at(FitFamily fam, const std::vector<double>& p, const Vector& target,
              const TimeGrid& grid, double theta, double inventory) {
  try {
    const Vector r = schedule_of(eval_family(fam, p, grid).g, theta, inventory, false).eta - target;
    const double v = r.squaredNorm();
    return std::isfinite(v) ? v : kInf;
  } catch (const Error&) {
    return kInf;
  }
}

}  // namespace

std::string_view to_string(FitFamily f) noexcept {
  switch (f) {
    case FitFamily::Polynomial: return "polynomial";
    case FitFamily::Exponential: return "exponential";
    case FitFamily::PowerLaw: return "power_law";
  }
  return "unknown";
}

FitFamily fit_family_from_string(std::string_view name) {
  if (name == "polynomial") return FitFamily::Polynomial;
  if (name == "exponential") return FitFamily::Exponential;
  if (name == "power_law") return FitFamily::PowerLaw;
  throw Error(ErrorCode::Parse, "unknown fit family '" + std::string(name) + "'");
}

std::vector<double> default_init(FitFamily family) {
  switch (family) {
    case FitFamily::Polynomial: return {0.0, -1.0};
    case FitFamily::Exponential: return {1.0, 1.0};
    case FitFamily::PowerLaw: return {0.5, 10.0};
  }
  return {};
}

FitResult fit_parametric(const Vector& target, FitFamily family, const TimeGrid& grid,
                         double theta, double inventory, std::vector<double> init,
                         const FitOptions& opts) {
  if (static_cast<std::size_t>(target.size()) != grid.n_points())
    throw Error(ErrorCode::WrongArity, "target length does not match the grid");
  if (init.empty()) init = default_init(family);
  if (init.size() != 2) throw Error(ErrorCode::WrongArity, "every fit family has two free parameters");
  project(family, init);

  std::vector<double> p = init;
  double rss = rss_at(family, p, target, grid, theta, inventory);
  if (!std::isfinite(rss))
    throw Error(ErrorCode::NonsingularityViolation, "initial parameters give a singular system");

  double mu = opts.lambda0;
  bool converged = false;
  int it = 0;
  for (; it < opts.max_iterations && !converged; ++it) {
    const FamilyEval fe = eval_family(family, p, grid);
    const Schedule sch = schedule_of(fe.g, theta, inventory, true);
    const Vector r = sch.eta - target;
    const Matrix j = sch.jac * fe.dg;
    const Matrix a = j.transpose() * j;
    const Vector grad = j.transpose() * r;
    if (rss == 0.0) {
      converged = true;
      break;
    }

    std::vector<double> trial;
    double rss_new = kInf;
    Vector step;
    while (true) {
      Matrix damped = a;
      damped.diagonal() += mu * (a.diagonal().array() + 1e-30).matrix();
      step = damped.ldlt().solve(-grad);
      trial = {p[0] + step(0), p[1] + step(1)};
      project(family, trial);
      rss_new = rss_at(family, trial, target, grid, theta, inventory);
      if (rss_new < rss) {
        mu /= 10.0;
        break;
      }
      mu *= 10.0;
      if (mu > 1e16) break;
    }
    if (!(rss_new < rss)) {
      converged = true;  // no descent left at working precision
      break;
    }
    const double dr = (rss - rss_new) / rss;
    const double dx = std::hypot(trial[0] - p[0], trial[1] - p[1]) /
                      (1e-12 + std::hypot(p[0], p[1]));
    p = trial;
    rss = rss_new;
    if (dr < opts.tol_fun || dx < opts.tol_x) converged = true;
  }

  FitResult res;
  res.family = family;
  res.converged = converged;
  res.iterations = it;
  const FamilyEval fe = eval_family(family, p, grid);
  const Schedule sch = schedule_of(fe.g, theta, inventory, true);
  res.fitted_schedule = sch.eta;
  res.residual_norm = (sch.eta - target).squaredNorm();
  res.intercept = fe.intercept;
  res.kernel = family_kernel(family, p, fe.intercept, grid);

  // Gaussian approximation: cov = s^2 (J^T J)^{-1}, s^2 = RSS / (n - p).
  // (J^T J)^{-1} = V S^{-2} V^T from the SVD of J, which stays accurate when
  // J^T J is badly conditioned.
  const Matrix j = sch.jac * fe.dg;
  const double dof = static_cast<double>(target.size()) - 2.0;
  Eigen::JacobiSVD<Matrix> svd(j, Eigen::ComputeThinV);
  Vector se = Vector::Constant(2, std::numeric_limits<double>::quiet_NaN());
  if (dof > 0 && svd.singularValues().minCoeff() > 0.0) {
    const Matrix& v = svd.matrixV();
    const Vector inv_s2 = svd.singularValues().array().square().inverse();
    const Matrix cov = (res.residual_norm / dof) * (v * inv_s2.asDiagonal() * v.transpose());
    se = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  }
  const double tq =
      dof > 0 ? boost::math::quantile(boost::math::complement(boost::math::students_t(dof), 0.025))
              : std::numeric_limits<double>::quiet_NaN();

  static const char* names[3][2] = {{"alpha2", "alpha1"}, {"lambda", "rho"}, {"p", "B"}};
  for (int k = 0; k < 2; ++k) {
    FitParam fp;
    fp.name = names[static_cast<int>(family)][k];
    fp.estimate = p[static_cast<std::size_t>(k)];
    fp.std_error = se(k);
    fp.ci_low = fp.estimate - tq * fp.std_error;
    fp.ci_high = fp.estimate + tq * fp.std_error;
    res.params.push_back(fp);
  }
  return res;
}

Vector nnls(const Matrix& a, const Vector& b, int max_iterations) {
  const Eigen::Index n = a.cols();
  if (a.rows() != b.size()) throw Error(ErrorCode::WrongArity, "nnls: dimension mismatch");
  if (max_iterations <= 0) max_iterations = static_cast<int>(3 * n + 10);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     a.cwiseAbs().colwise().sum().maxCoeff() *
                     static_cast<double>(std::max(a.rows(), n));

  Vector x = Vector::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  Vector w = a.transpose() * (b - a * x);

  auto solve_passive = [&](Vector& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index k = 0; k < n; ++k)
      if (passive[static_cast<std::size_t>(k)]) idx.push_back(k);
    Matrix ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) ap.col(static_cast<Eigen::Index>(c)) = a.col(idx[c]);
    const Vector zp = ap.colPivHouseholderQr().solve(b);
    z = Vector::Zero(n);
    for (std::size_t c = 0; c < idx.size(); ++c) z(idx[c]) = zp(static_cast<Eigen::Index>(c));
  };

  for (int outer = 0; outer < max_iterations; ++outer) {
    Eigen::Index best = -1;
    double wmax = tol;
    for (Eigen::Index k = 0; k < n; ++k)
      if (!passive[static_cast<std::size_t>(k)] && w(k) > wmax) {
        wmax = w(k);
        best = k;
      }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;

    Vector z;
    for (int inner = 0; inner < max_iterations; ++inner) {
      solve_passive(z);
      double alpha = kInf;
      for (Eigen::Index k = 0; k < n; ++k)
        if (passive[static_cast<std::size_t>(k)] && z(k) <= 0.0)
          alpha = std::min(alpha, x(k) / (x(k) - z(k)));
      if (alpha == kInf) break;
      x += alpha * (z - x);
      for (Eigen::Index k = 0; k < n; ++k)
        if (passive[static_cast<std::size_t>(k)] && x(k) <= tol) {
          passive[static_cast<std::size_t>(k)] = false;
          x(k) = 0.0;
        }
    }
    x = z;
    w = a.transpose() * (b - a * x);
  }
  return x.cwiseMax(0.0);
}

Matrix schedule_jacobian(const Vector& g, double theta, double inventory) {
  return schedule_of(g, theta, inventory, true).jac;
}

double schedule_error(const Vector& g, const Vector& target, double theta, double inventory) {
  return (schedule_of(g, theta, inventory, false).eta - target).cwiseAbs().mean();
}

ImpliedKernel fit_nonparametric(const Vector& target, const ImpliedKernel& start,
                                const TimeGrid& grid, double theta, double inventory,
                                const NonparametricOptions& opts) {
  const Eigen::Index l = static_cast<Eigen::Index>(grid.n_points());
  if (start.g.size() != l || target.size() != l)
    throw Error(ErrorCode::WrongArity, "start kernel and target must match the grid");
  const Eigen::Index n = l - 1;

  // basis(k, m - 1) = max(0, m - k): convex, non-increasing, zero at the last lag.
  Matrix basis = Matrix::Zero(l, n);
  for (Eigen::Index k = 0; k < l; ++k)
    for (Eigen::Index m = 1; m <= n; ++m) basis(k, m - 1) = std::max<double>(0.0, static_cast<double>(m - k));

  const Vector shifted_start = start.g.array() - start.g(l - 1);
  Vector c = nnls(basis, shifted_start);
  const double projection_distance = (basis * c - shifted_start).cwiseAbs().maxCoeff();

  Vector g = basis * c;
  Schedule sch = schedule_of(g, theta, inventory, true);
  Vector r = sch.eta - target;
  double rss = r.squaredNorm();
  double mu = 1e-3;
  int it = 0;
  bool converged = r.cwiseAbs().mean() <= opts.tol_error;

  while (!converged && it < opts.max_iterations) {
    const Matrix j = sch.jac * basis;
    const Vector grad = j.transpose() * r;
    std::vector<Eigen::Index> free;
    for (Eigen::Index k = 0; k < n; ++k)
      if (!(c(k) <= 0.0 && grad(k) > 0.0)) free.push_back(k);
    const auto nf = static_cast<Eigen::Index>(free.size());
    Matrix jf(l, nf);
    Vector gf(nf);
    for (Eigen::Index q = 0; q < nf; ++q) {
      jf.col(q) = j.col(free[static_cast<std::size_t>(q)]);
      gf(q) = grad(free[static_cast<std::size_t>(q)]);
    }
    const Matrix a = jf.transpose() * jf;

    Vector c_new;
    double rss_new = kInf;
    Schedule sch_new;
    while (true) {
      Matrix damped = a;
      damped.diagonal() += mu * (a.diagonal().array() + 1e-30).matrix();
      const Vector step = damped.ldlt().solve(-gf);
      c_new = c;
      for (Eigen::Index q = 0; q < nf; ++q) c_new(free[static_cast<std::size_t>(q)]) += step(q);
      c_new = c_new.cwiseMax(0.0);
      try {
        sch_new = schedule_of(basis * c_new, theta, inventory, true);
        rss_new = (sch_new.eta - target).squaredNorm();
      } catch (const Error&) {
        rss_new = kInf;
      }
      if (rss_new < rss) {
        mu = std::max(mu / 10.0, 1e-12);
        break;
      }
      mu *= 10.0;
      if (mu > 1e16) break;
    }
    ++it;
    if (!(rss_new < rss)) {
      converged = true;
      break;
    }
    const double dr = (rss - rss_new) / rss;
    c = c_new;
    sch = std::move(sch_new);
    r = sch.eta - target;
    rss = rss_new;
    if (r.cwiseAbs().mean() <= opts.tol_error || dr < opts.tol_fun) converged = true;
  }

  ImpliedKernel out;
  out.g = basis * c;
  out.provenance = Provenance::Fitted;
  out.diagnostics["schedule_error"] = r.cwiseAbs().mean();
  out.diagnostics["residual_norm"] = rss;
  out.diagnostics["iterations"] = it;
  out.diagnostics["converged"] = converged ? 1.0 : 0.0;
  out.diagnostics["projection_distance"] = projection_distance;
  return out;
}

MultiStartRun nonparametric_multistart(const Vector& target, const TimeGrid& grid, double theta,
                                       double inventory, std::size_t exponential_starts,
                                       std::size_t power_law_starts, std::uint64_t seed,
                                       std::size_t rounds, const NonparametricOptions& opts) {
  std::mt19937_64 rng(seed);
  // 53-bit uniform in [0, 1); spelled out so the draws do not depend on the
  // standard library's distribution implementation.
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  MultiStartRun run;
  const std::size_t total = exponential_starts + power_law_starts;
  for (std::size_t s = 0; s < total; ++s) {
    KernelSpec spec;
    if (s < exponential_starts) {
      const double lam = uniform(1.0, 10.0);
      const double rho = uniform(0.1, 3.0);
      spec = ExponentialKernel{lam, rho, 0.0};
    } else {
      const double b = uniform(1.0, 10.0);
      const double q = uniform(0.1, 1.0);
      spec = PowerLawKernel{b, 1.0 - q, 0.0};
    }
    ImpliedKernel start;
    start.provenance = Provenance::Fitted;
    start.g.resize(static_cast<Eigen::Index>(grid.n_points()));
    for (std::size_t k = 0; k < grid.n_points(); ++k)
      start.g(static_cast<Eigen::Index>(k)) = eval_kernel(spec, grid[k]);
    start.g.array() -= start.g(start.g.size() - 1);
    run.starts.push_back(std::move(start));
  }

  const std::vector<ImpliedKernel>* previous = &run.starts;
  for (std::size_t r = 0; r < rounds; ++r) {
    std::vector<ImpliedKernel> fits;
    double err = 0.0;
    for (const auto& st : *previous) {
      fits.push_back(fit_nonparametric(target, st, grid, theta, inventory, opts));
      err += fits.back().diagnostics.at("schedule_error");
    }
    run.mean_error.push_back(fits.empty() ? 0.0 : err / static_cast<double>(fits.size()));
    run.rounds.push_back(std::move(fits));
    previous = &run.rounds.back();
  }
  return run;
}

}  // namespace impact
