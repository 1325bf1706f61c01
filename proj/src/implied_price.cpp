#include "impact/implied_price.hpp"

#include <cmath>

#include "impact/error.hpp"

namespace impact {

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::PriceApproach: return "price_approach";
    case Provenance::AcFlowVariant: return "ac_flow_variant";
    case Provenance::ExecApproach: return "exec_approach";
    case Provenance::Fitted: return "fitted";
  }
  return "unknown";
}

DriftSeries aggregate_drift(const KernelMatrices& mats, const FlowSeries& flows) {
  if (flows.size() != mats.size())
    throw Error(ErrorCode::WrongArity, "flow length " + std::to_string(flows.size()) +
                                           " does not match grid size " +
                                           std::to_string(mats.size()));
  const Matrix causal = mats.gamma.triangularView<Eigen::Lower>();
  return -(causal * flows);
}

ImpliedKernel implied_kernel_price(const FlowSeries& flows, const DriftSeries& drift) {
  const Eigen::Index n = flows.size();
  if (n == 0 || drift.size() != n)
    throw Error(ErrorCode::WrongArity, "flow and drift must have the same nonzero length");
  const double scale = flows.cwiseAbs().maxCoeff();
  if (!(std::abs(flows(0)) >= 1e-12 * scale) || scale == 0.0)
    throw Error(ErrorCode::SingularFlow, "first flow is zero; the implied kernel is not unique");

  ImpliedKernel out;
  out.provenance = Provenance::PriceApproach;
  out.g.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double acc = -drift(k);
    for (Eigen::Index m = 0; m < k; ++m) acc -= flows(k - m) * out.g(m);
    out.g(k) = acc / flows(0);
  }

  double residual = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    double mg = 0.0;
    for (Eigen::Index m = 0; m <= k; ++m) mg += flows(k - m) * out.g(m);
    residual = std::max(residual, std::abs(mg + drift(k)));
  }
  bool concave = true;
  bool non_increasing = true;
  for (Eigen::Index k = 1; k < n; ++k) {
    if (out.g(k) > out.g(k - 1) + kDefaultTol) non_increasing = false;
    if (k + 1 < n && out.g(k - 1) - 2.0 * out.g(k) + out.g(k + 1) > kDefaultTol) concave = false;
  }
  out.diagnostics["residual"] = residual;
  out.diagnostics["g0"] = out.g(0);
  out.diagnostics["concave"] = concave ? 1.0 : 0.0;
  out.diagnostics["non_increasing"] = non_increasing ? 1.0 : 0.0;
  return out;
}

ImpliedKernel scale_to_unit(const ImpliedKernel& kernel) {
  if (kernel.g.size() == 0 || kernel.g(0) == 0.0 || !std::isfinite(kernel.g(0)))
    throw Error(ErrorCode::Scale, "cannot scale a kernel whose value at zero is zero");
  ImpliedKernel out = kernel;
  out.g /= kernel.g(0);
  out.diagnostics["scale"] = kernel.g(0);
  return out;
}

ImpliedKernel ac_flow_variant(const DriftSeries& drift, double inventory, std::size_t n_steps) {
  if (inventory == 0.0 || !std::isfinite(inventory))
    throw Error(ErrorCode::InvalidArgument, "flat-flow variant needs a nonzero inventory");
  const auto n = static_cast<Eigen::Index>(n_steps + 1);
  if (drift.size() != n)
    throw Error(ErrorCode::WrongArity, "drift length does not match N + 1");
  const Vector flat = Vector::Constant(n, inventory / static_cast<double>(n));
  ImpliedKernel out = implied_kernel_price(flat, drift);
  out.provenance = Provenance::AcFlowVariant;
  out.diagnostics["flat_flow"] = flat(0);
  return out;
}

}  // namespace impact
