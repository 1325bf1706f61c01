#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "impact/fitting.hpp"
#include "impact/game.hpp"
#include "impact/implied_exec.hpp"
#include "impact/implied_price.hpp"
#include "impact/kernel.hpp"
#include "impact/tim.hpp"

namespace impact {

using Json = nlohmann::ordered_json;

/// Shortest round-tripping text for a double ("%.17g").
std::string fmt(double x);

Json to_json(const TimeGrid& grid);
/// {"horizon": T, "n_steps": N} or {"times": [...]}.
TimeGrid grid_from_json(const Json& j);

/// {"family": "constant" | "linear" | "exponential" | "power_law" | "tabulated", ...}
Json to_json(const KernelSpec& spec);
/// Tabulated kernels without "lags" take the lags of `grid`.
KernelSpec kernel_from_json(const Json& j, const TimeGrid* grid = nullptr);

Json to_json(const GameSpec& spec);
GameSpec game_from_json(const Json& j);

Json to_json(const ExecutionProblem& prob);
ExecutionProblem problem_from_json(const Json& j);

Json to_json(const FitResult& fit);
Json to_json(const ImpliedKernel& kernel);
Json to_json(const HSystem& sys);

// CSV writers. Numbers use fmt(); the first column is the time or lag.
std::string matrix_csv(const Matrix& m, const TimeGrid& grid);
std::string strategies_csv(const Matrix& strategies, const TimeGrid& grid);
std::string schedule_csv(const Vector& schedule, const TimeGrid& grid);
/// lag, g, g_scaled (g / g_0).
std::string kernel_csv(const Vector& g, const TimeGrid& grid);
/// Long format: t, agent, asset, trade.
std::string multiasset_csv(const std::vector<Matrix>& strategies, const TimeGrid& grid);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace impact
