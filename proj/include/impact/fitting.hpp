#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "impact/grid.hpp"
#include "impact/implied_price.hpp"
#include "impact/kernel.hpp"
#include "impact/linalg.hpp"

namespace impact {

// Kernel families for the parametric fit. The intercept is eliminated by G(T) = 0.
//   Polynomial:  alpha2 t^2 + alpha1 t + alpha0          free (alpha2, alpha1)
//   Exponential: lambda exp(-rho t) + gamma               free (lambda, rho), rho > 0
//   PowerLaw:    B / (1 + t)^(1 - p) + C                  free (p, B), p < 1
enum class FitFamily { Polynomial, Exponential, PowerLaw };

std::string_view to_string(FitFamily f) noexcept;
FitFamily fit_family_from_string(std::string_view name);

struct FitParam {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct FitResult {
  FitFamily family = FitFamily::Polynomial;
  std::vector<FitParam> params;
  double intercept = 0.0;      // alpha0, gamma or C
  double residual_norm = 0.0;  // squared 2-norm
  Vector fitted_schedule;
  KernelSpec kernel;
  bool converged = false;
  int iterations = 0;
};

struct FitOptions {
  int max_iterations = 500;
  double lambda0 = 1e-3;
  double tol_fun = 1e-8;  // relative decrease of the residual
  double tol_x = 1e-8;    // relative step length
};

/// Damped Gauss-Newton (Levenberg-Marquardt) on ||eta*(G_params) - target||^2.
/// An empty `init` uses the family default.
FitResult fit_parametric(const Vector& target, FitFamily family, const TimeGrid& grid,
                         double theta, double inventory, std::vector<double> init = {},
                         const FitOptions& opts = {});

/// Default starting point per family.
std::vector<double> default_init(FitFamily family);

struct NonparametricOptions {
  int max_iterations = 200;
  double tol_error = 1e-13;  // stop once the mean schedule error is below this
  double tol_fun = 1e-10;    // relative decrease of the residual
};

/// Fit over tabulated kernels that are convex, non-increasing and vanish at T.
/// Such kernels are exactly g_k = sum_{m > k} c_m (m - k) with c >= 0; the start
/// is projected onto that cone by NNLS, then projected LM runs on c.
/// diagnostics: schedule_error (mean absolute deviation), iterations, converged.
ImpliedKernel fit_nonparametric(const Vector& target, const ImpliedKernel& start,
                                const TimeGrid& grid, double theta, double inventory,
                                const NonparametricOptions& opts = {});

struct MultiStartRun {
  std::vector<ImpliedKernel> starts;
  std::vector<std::vector<ImpliedKernel>> rounds;  // round r restarts from round r - 1
  std::vector<double> mean_error;                  // per round
};

/// Random starts: exponential lambda in [1, 10], rho in [0.1, 3]; power law
/// B in [1, 10], 1 - p in [0.1, 1]. Each start is shifted so that G(T) = 0.
MultiStartRun nonparametric_multistart(const Vector& target, const TimeGrid& grid, double theta,
                                       double inventory, std::size_t exponential_starts,
                                       std::size_t power_law_starts, std::uint64_t seed,
                                       std::size_t rounds = 2,
                                       const NonparametricOptions& opts = {});

/// d eta* / d g for Gamma_theta = Toep(g) + 2 theta I, one column per lag.
Matrix schedule_jacobian(const Vector& g, double theta, double inventory);

/// Mean absolute deviation between the TIM schedule of Toep(g) + 2 theta I and target.
double schedule_error(const Vector& g, const Vector& target, double theta, double inventory);

/// min ||A x - b|| subject to x >= 0 (Lawson-Hanson active set).
Vector nnls(const Matrix& a, const Vector& b, int max_iterations = 0);

}  // namespace impact
