#include "impact/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "impact/error.hpp"

namespace impact {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Json number(double x) {
  // JSON has no NaN or infinity.
  if (!std::isfinite(x)) return nullptr;
  return x;
}

double get_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw Error(ErrorCode::Parse, std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

double get_number_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? get_number(j, key) : fallback;
}

std::vector<double> get_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw Error(ErrorCode::Parse, std::string("missing array field '") + key + "'");
  try {
    return j.at(key).get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("field '") + key + "': " + e.what());
  }
}

Json vec_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(number(v(k)));
  return a;
}

}  // namespace

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const TimeGrid& grid) {
  if (grid.equidistant()) return Json{{"horizon", grid.horizon()}, {"n_steps", grid.n_steps()}};
  return Json{{"times", std::vector<double>(grid.times().begin(), grid.times().end())}};
}

TimeGrid grid_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "grid must be an object");
  if (j.contains("times")) return TimeGrid::from_times(get_array(j, "times"));
  const double n = get_number(j, "n_steps");
  if (n < 1 || n != std::floor(n)) throw Error(ErrorCode::Parse, "n_steps must be a positive integer");
  return TimeGrid::equidistant(get_number_or(j, "horizon", 1.0), static_cast<std::size_t>(n));
}

Json to_json(const KernelSpec& spec) {
  return std::visit(
      overloaded{
          [](const ConstantKernel& k) { return Json{{"family", "constant"}, {"g1", k.g1}}; },
          [](const LinearKernel& k) {
            return Json{{"family", "linear"}, {"alpha", k.alpha}, {"beta", k.beta}};
          },
          [](const ExponentialKernel& k) {
            return Json{{"family", "exponential"},
                        {"lambda", k.lambda_coef},
                        {"rho", k.rho},
                        {"gamma", k.gamma_const}};
          },
          [](const PowerLawKernel& k) {
            return Json{{"family", "power_law"}, {"b", k.b_coef}, {"p", k.p}, {"c", k.c_const}};
          },
          [](const TabulatedKernel& k) {
            return Json{{"family", "tabulated"}, {"lags", k.lags}, {"g", k.values}};
          },
      },
      spec);
}

KernelSpec kernel_from_json(const Json& j, const TimeGrid* grid) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw Error(ErrorCode::Parse, "kernel needs a string 'family'");
  const auto fam = j.at("family").get<std::string>();
  if (fam == "constant") return ConstantKernel{get_number(j, "g1")};
  if (fam == "linear") return LinearKernel{get_number(j, "alpha"), get_number(j, "beta")};
  if (fam == "exponential")
    return ExponentialKernel{get_number(j, "lambda"), get_number(j, "rho"),
                             get_number_or(j, "gamma", 0.0)};
  if (fam == "power_law")
    return PowerLawKernel{get_number(j, "b"), get_number(j, "p"), get_number_or(j, "c", 0.0)};
  if (fam == "tabulated") {
    auto values = get_array(j, "g");
    if (j.contains("lags")) {
      TabulatedKernel k{get_array(j, "lags"), std::move(values)};
      if (k.lags.size() != k.values.size())
        throw Error(ErrorCode::Parse, "tabulated kernel: lags and g differ in length");
      return k;
    }
    if (!grid) throw Error(ErrorCode::Parse, "tabulated kernel without lags needs a grid");
    return TabulatedKernel::on_grid(*grid, std::move(values));
  }
  throw Error(ErrorCode::Parse, "unknown kernel family '" + fam + "'");
}

Json to_json(const GameSpec& spec) {
  return Json{{"grid", to_json(spec.grid)},
              {"kernel", to_json(spec.kernel)},
              {"theta", spec.theta},
              {"inventories", spec.inventories}};
}

GameSpec game_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "game must be an object");
  GameSpec spec;
  if (j.contains("grid")) spec.grid = grid_from_json(j.at("grid"));
  if (j.contains("kernel")) spec.kernel = kernel_from_json(j.at("kernel"), &spec.grid);
  spec.theta = get_number_or(j, "theta", spec.theta);
  if (j.contains("inventories")) spec.inventories = get_array(j, "inventories");
  return spec;
}

Json to_json(const ExecutionProblem& prob) {
  return Json{{"grid", to_json(prob.grid)},
              {"kernel", to_json(prob.kernel)},
              {"theta", prob.theta},
              {"inventory", prob.inventory}};
}

ExecutionProblem problem_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "problem must be an object");
  ExecutionProblem prob;
  if (j.contains("grid")) prob.grid = grid_from_json(j.at("grid"));
  if (j.contains("kernel")) prob.kernel = kernel_from_json(j.at("kernel"), &prob.grid);
  prob.theta = get_number_or(j, "theta", prob.theta);
  prob.inventory = get_number_or(j, "inventory", prob.inventory);
  return prob;
}

Json to_json(const FitResult& fit) {
  Json params = Json::array();
  for (const auto& p : fit.params)
    params.push_back(Json{{"name", p.name},
                          {"estimate", number(p.estimate)},
                          {"se", number(p.std_error)},
                          {"ci95", Json::array({number(p.ci_low), number(p.ci_high)})}});
  return Json{{"family", std::string(to_string(fit.family))},
              {"params", params},
              {"intercept", number(fit.intercept)},
              {"res_norm", number(fit.residual_norm)},
              {"converged", fit.converged},
              {"iterations", fit.iterations},
              {"fitted_schedule", vec_json(fit.fitted_schedule)}};
}

Json to_json(const ImpliedKernel& kernel) {
  Json diag = Json::object();
  for (const auto& [k, v] : kernel.diagnostics) diag[k] = number(v);
  return Json{{"provenance", std::string(to_string(kernel.provenance))},
              {"g", vec_json(kernel.g)},
              {"diagnostics", diag}};
}

Json to_json(const HSystem& sys) {
  Json basis = Json::array();
  for (const auto& b : sys.nullspace_basis) basis.push_back(vec_json(b));
  return Json{{"rank", sys.rank},
              {"size", sys.h.rows()},
              {"consistent", sys.consistent},
              {"u_shaped", sys.u_shaped},
              {"residual", number(sys.residual)},
              {"particular", vec_json(sys.particular)},
              {"nullspace_basis", basis}};
}

std::string matrix_csv(const Matrix& m, const TimeGrid& grid) {
  if (static_cast<std::size_t>(m.cols()) != grid.n_points())
    throw Error(ErrorCode::WrongArity, "matrix columns do not match the grid");
  std::ostringstream os;
  for (std::size_t k = 0; k < grid.n_points(); ++k) os << (k ? "," : "") << fmt(grid[k]);
  os << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << fmt(m(i, j));
    os << '\n';
  }
  return os.str();
}

std::string strategies_csv(const Matrix& strategies, const TimeGrid& grid) {
  if (static_cast<std::size_t>(strategies.cols()) != grid.n_points())
    throw Error(ErrorCode::WrongArity, "strategies do not match the grid");
  std::ostringstream os;
  os << 't';
  for (Eigen::Index a = 0; a < strategies.rows(); ++a) os << ",agent_" << a + 1;
  os << '\n';
  for (Eigen::Index k = 0; k < strategies.cols(); ++k) {
    os << fmt(grid[static_cast<std::size_t>(k)]);
    for (Eigen::Index a = 0; a < strategies.rows(); ++a) os << ',' << fmt(strategies(a, k));
    os << '\n';
  }
  return os.str();
}

std::string schedule_csv(const Vector& schedule, const TimeGrid& grid) {
  if (static_cast<std::size_t>(schedule.size()) != grid.n_points())
    throw Error(ErrorCode::WrongArity, "schedule does not match the grid");
  std::ostringstream os;
  os << "t,trade\n";
  for (Eigen::Index k = 0; k < schedule.size(); ++k)
    os << fmt(grid[static_cast<std::size_t>(k)]) << ',' << fmt(schedule(k)) << '\n';
  return os.str();
}

std::string kernel_csv(const Vector& g, const TimeGrid& grid) {
  if (static_cast<std::size_t>(g.size()) != grid.n_points())
    throw Error(ErrorCode::WrongArity, "kernel does not match the grid");
  std::ostringstream os;
  os << "lag,g,g_scaled\n";
  for (Eigen::Index k = 0; k < g.size(); ++k)
    os << fmt(grid[static_cast<std::size_t>(k)]) << ',' << fmt(g(k)) << ','
       << fmt(g(0) != 0.0 ? g(k) / g(0) : std::nan("")) << '\n';
  return os.str();
}

std::string multiasset_csv(const std::vector<Matrix>& strategies, const TimeGrid& grid) {
  std::ostringstream os;
  os << "t,agent,asset,trade\n";
  for (std::size_t a = 0; a < strategies.size(); ++a) {
    const Matrix& s = strategies[a];
    if (static_cast<std::size_t>(s.cols()) != grid.n_points())
      throw Error(ErrorCode::WrongArity, "strategies do not match the grid");
    for (Eigen::Index k = 0; k < s.cols(); ++k)
      for (Eigen::Index as = 0; as < s.rows(); ++as)
        os << fmt(grid[static_cast<std::size_t>(k)]) << ',' << a + 1 << ',' << as + 1 << ','
           << fmt(s(as, k)) << '\n';
  }
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace impact
