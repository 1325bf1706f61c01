#include "impact/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "impact/error.hpp"

namespace impact {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kLagTol = 1e-12;

}  // namespace

TabulatedKernel TabulatedKernel::on_grid(const TimeGrid& grid, std::vector<double> values) {
  if (values.size() != grid.n_points())
    throw Error(ErrorCode::InvalidArgument, "tabulated kernel needs " +
                                                std::to_string(grid.n_points()) + " values, got " +
                                                std::to_string(values.size()));
  TabulatedKernel k;
  k.lags.assign(grid.times().begin(), grid.times().end());
  k.values = std::move(values);
  return k;
}

double eval_kernel(const KernelSpec& spec, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel evaluated at negative time");
  return std::visit(
      overloaded{
          [](const ConstantKernel& k) { return k.g1; },
          [t](const LinearKernel& k) { return k.alpha + k.beta * t; },
          [t](const ExponentialKernel& k) {
            return k.lambda_coef * std::exp(-k.rho * t) + k.gamma_const;
          },
          [t](const PowerLawKernel& k) {
            return k.b_coef / std::pow(1.0 + t, 1.0 - k.p) + k.c_const;
          },
          [t](const TabulatedKernel& k) {
            if (k.lags.size() != k.values.size() || k.lags.empty())
              throw Error(ErrorCode::InvalidArgument, "malformed tabulated kernel");
            const double tol = kLagTol * std::max(1.0, k.lags.back());
            auto it = std::lower_bound(k.lags.begin(), k.lags.end(), t - tol);
            if (it == k.lags.end() || std::abs(*it - t) > tol)
              throw Error(ErrorCode::LagMismatch,
                          "tabulated kernel has no value at lag " + std::to_string(t));
            return k.values[static_cast<std::size_t>(it - k.lags.begin())];
          },
      },
      spec);
}

double stability_threshold(const KernelSpec& spec) { return eval_kernel(spec, 0.0) / 4.0; }

KernelSpec shifted(const KernelSpec& spec, double k) {
  return std::visit(overloaded{
                        [k](ConstantKernel c) -> KernelSpec { c.g1 += k; return c; },
                        [k](LinearKernel c) -> KernelSpec { c.alpha += k; return c; },
                        [k](ExponentialKernel c) -> KernelSpec { c.gamma_const += k; return c; },
                        [k](PowerLawKernel c) -> KernelSpec { c.c_const += k; return c; },
                        [k](TabulatedKernel c) -> KernelSpec {
                          for (double& v : c.values) v += k;
                          return c;
                        },
                    },
                    spec);
}

KernelSpec scaled(const KernelSpec& spec, double c) {
  return std::visit(overloaded{
                        [c](ConstantKernel k) -> KernelSpec { k.g1 *= c; return k; },
                        [c](LinearKernel k) -> KernelSpec {
                          k.alpha *= c;
                          k.beta *= c;
                          return k;
                        },
                        [c](ExponentialKernel k) -> KernelSpec {
                          k.lambda_coef *= c;
                          k.gamma_const *= c;
                          return k;
                        },
                        [c](PowerLawKernel k) -> KernelSpec {
                          k.b_coef *= c;
                          k.c_const *= c;
                          return k;
                        },
                        [c](TabulatedKernel k) -> KernelSpec {
                          for (double& v : k.values) v *= c;
                          return k;
                        },
                    },
                    spec);
}

std::string family_name(const KernelSpec& spec) {
  return std::visit(overloaded{
                        [](const ConstantKernel&) { return std::string("constant"); },
                        [](const LinearKernel&) { return std::string("linear"); },
                        [](const ExponentialKernel&) { return std::string("exponential"); },
                        [](const PowerLawKernel&) { return std::string("power_law"); },
                        [](const TabulatedKernel&) { return std::string("tabulated"); },
                    },
                    spec);
}

void check_compatible(const KernelSpec& spec, const TimeGrid& grid) {
  if (const auto* tab = std::get_if<TabulatedKernel>(&spec)) {
    if (tab->values.size() != grid.n_points())
      throw Error(ErrorCode::InvalidArgument,
                  "tabulated kernel length " + std::to_string(tab->values.size()) +
                      " does not match grid with " + std::to_string(grid.n_points()) + " points");
  }
}

}  // namespace impact
