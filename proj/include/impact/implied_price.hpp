#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "impact/linalg.hpp"
#include "impact/matrices.hpp"

namespace impact {

/// Trade sizes per grid time, either one agent's or the market aggregate.
using FlowSeries = Vector;
/// Expected price changes S_{t_k} - S_0 per grid time.
using DriftSeries = Vector;

enum class Provenance { PriceApproach, AcFlowVariant, ExecApproach, Fitted };

std::string_view to_string(Provenance p) noexcept;

/// Kernel values at the lags t_k - t_0 of an equidistant grid.
struct ImpliedKernel {
  Vector g;
  Provenance provenance = Provenance::PriceApproach;
  std::map<std::string, double> diagnostics;
};

/// S_k = -sum_{j <= k} G(t_k - t_j) Xi_j: the expected drift after each
/// trade at t_k, using the lower triangle of Gamma including its diagonal.
DriftSeries aggregate_drift(const KernelMatrices& mats, const FlowSeries& flows);

/// Solves M g = -S by forward substitution, M(k, j) = Xi_{k-j} for j <= k.
/// Rejects |Xi_0| < 1e-12 ||Xi||_inf as SingularFlow.
ImpliedKernel implied_kernel_price(const FlowSeries& flows, const DriftSeries& drift);

/// g / g_0, keeping g_0 as diagnostics["scale"].
ImpliedKernel scale_to_unit(const ImpliedKernel& kernel);

/// Price approach with the flat flow X / (N + 1) in place of the observed one.
ImpliedKernel ac_flow_variant(const DriftSeries& drift, double inventory, std::size_t n_steps);

}  // namespace impact
