#pragma once

#include <string>
#include <variant>
#include <vector>

#include "impact/grid.hpp"

namespace impact {

// Decay kernel families G(t), t >= 0.

struct ConstantKernel {
  double g1 = 1.0;
};

/// G(t) = alpha + beta * t
struct LinearKernel {
  double alpha = 0.0;
  double beta = 0.0;
};

/// G(t) = lambda * exp(-rho * t) + gamma
struct ExponentialKernel {
  double lambda_coef = 1.0;
  double rho = 1.0;
  double gamma_const = 0.0;
};

/// G(t) = B / (1 + t)^(1 - p) + C
struct PowerLawKernel {
  double b_coef = 1.0;
  double p = 0.0;
  double c_const = 0.0;
};

/// Kernel values known only at the lags t_k - t_0 of one grid.
struct TabulatedKernel {
  std::vector<double> lags;
  std::vector<double> values;

  static TabulatedKernel on_grid(const TimeGrid& grid, std::vector<double> values);
};

using KernelSpec =
    std::variant<ConstantKernel, LinearKernel, ExponentialKernel, PowerLawKernel, TabulatedKernel>;

double eval_kernel(const KernelSpec& spec, double t);

/// theta at which equilibrium oscillations disappear: G(0) / 4.
double stability_threshold(const KernelSpec& spec);

/// G(t) + k for every family.
KernelSpec shifted(const KernelSpec& spec, double k);
/// c * G(t) for every family.
KernelSpec scaled(const KernelSpec& spec, double c);

std::string family_name(const KernelSpec& spec);

/// Throws unless a tabulated kernel matches the grid's lags.
void check_compatible(const KernelSpec& spec, const TimeGrid& grid);

}  // namespace impact
