#include "impact/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "impact/error.hpp"
#include "impact/fitting.hpp"
#include "impact/implied_exec.hpp"
#include "impact/implied_price.hpp"
#include "impact/multiasset.hpp"
#include "impact/tim.hpp"

#ifndef IMPACT_VERSION
#define IMPACT_VERSION "dev"
#endif

namespace impact {
namespace {

class Sink {
 public:
  Sink(std::filesystem::path dir, ProcedureOutcome& out) : dir_(std::move(dir)), out_(out) {}

  void file(const std::string& name, const std::string& text) {
    write_text(dir_ / name, text);
    out_.files.push_back(name);
  }
  void json(const std::string& name, const Json& j) { file(name, j.dump(2) + "\n"); }

 private:
  std::filesystem::path dir_;
  ProcedureOutcome& out_;
};

using Procedure = std::function<void(const ExperimentConfig&, const ProcedureSpec&, Sink&)>;

Json vec(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

Json shape_json(const ShapeReport& s) {
  return Json{{"symmetric", s.symmetric},
              {"positive", s.positive},
              {"decreasing_first_half", s.decreasing_first_half},
              {"convex", s.convex}};
}

double param(const ProcedureSpec& p, const char* key, double fallback) {
  if (!p.params.contains(key)) return fallback;
  if (!p.params.at(key).is_number())
    throw Error(ErrorCode::Parse, p.name + ": '" + key + "' must be a number");
  return p.params.at(key).get<double>();
}

GameSpec game_of(const ExperimentConfig& cfg, const ProcedureSpec& p) {
  if (!p.params.contains("game")) return cfg.game;
  Json merged = to_json(cfg.game);
  for (const auto& [k, v] : p.params.at("game").items()) merged[k] = v;
  return game_from_json(merged);
}

Equilibrium solve_game(const GameSpec& g) {
  return g.inventories.size() == 2 ? two_agent_equilibrium(g) : multi_agent_equilibrium(g);
}

Matrix matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw Error(ErrorCode::Parse, std::string(what) + " must be a nested array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = j.at(static_cast<std::size_t>(r)).get<std::vector<double>>();
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw Error(ErrorCode::Parse, std::string(what) + " rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

Json matrix_json(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vec(m.row(r).transpose()));
  return a;
}

std::string columns_csv(const std::vector<std::string>& header, const std::vector<Vector>& cols) {
  std::ostringstream os;
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  os << '\n';
  const Eigen::Index n = cols.empty() ? 0 : cols.front().size();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << fmt(cols[c](k));
    os << '\n';
  }
  return os.str();
}

Vector times_of(const TimeGrid& grid) { return to_vector(grid.times()); }

// Directional schedule of the game unless the procedure supplies "schedule".
Vector target_schedule(const GameSpec& game, const ProcedureSpec& p) {
  if (p.params.contains("schedule")) return to_vector(p.params.at("schedule").get<std::vector<double>>());
  return solve_game(game).row(0);
}

void proc_equilibrium(const ExperimentConfig& cfg, const ProcedureSpec& p, Sink& sink) {
  const GameSpec game = game_of(cfg, p);
  const Equilibrium eq = solve_game(game);
  sink.file(p.name + "_strategies.csv", strategies_csv(eq.strategies, game.grid));

  Json report{{"game", to_json(game)},
              {"multipliers", vec(eq.multipliers)},
              {"expected_costs", vec(eq.expected_costs)}};
  Json shapes = Json::array();
  for (std::size_t a = 0; a < eq.n_agents(); ++a)
    shapes.push_back(game.grid.n_points() >= 3 ? shape_json(shape_report(eq.row(a), cfg.tol)) : Json());
  report["shapes"] = shapes;
  if (eq.fundamental_v) {
    sink.file(p.name + "_fundamental.csv",
              columns_csv({"t", "v", "w"}, {times_of(game.grid), *eq.fundamental_v, *eq.fundamental_w}));
    report["v"] = vec(*eq.fundamental_v);
    report["w"] = vec(*eq.fundamental_w);
  }
  sink.json(p.name + ".json", report);
}

void proc_myopic(const ExperimentConfig& cfg, const ProcedureSpec& p, Sink& sink) {
  const GameSpec game = game_of(cfg, p);
  double g_default = 1.0;
  if (const auto* c = std::get_if<ConstantKernel>(&game.kernel)) g_default = c->g1;
  const double g = param(p, "g", g_default);
  const double theta = param(p, "theta", game.theta);
  const double s0 = param(p, "s0", 10.0);
  const double x = param(p, "inventory", 1.0);
  const auto steps = static_cast<std::size_t>(param(p, "n_steps", static_cast<double>(game.grid.n_steps())));

  const MyopicComparison cmp = compare_myopic(g, theta, s0, x, steps);
  const MyopicOutcome& m = cmp.myopic;
  Vector rounds(static_cast<Eigen::Index>(m.trades.size()));
  for (Eigen::Index k = 0; k < rounds.size(); ++k) rounds(k) = static_cast<double>(k);
  sink.file(p.name + ".csv", columns_csv({"round", "price", "trade"},
                                         {rounds, to_vector(m.prices), to_vector(m.trades)}));
  sink.json(p.name + ".json",
            Json{{"g", g},
                 {"theta", theta},
                 {"s0", s0},
                 {"inventory", x},
                 {"alpha", m.alpha},
                 {"price_ratio", m.price_ratio},
                 {"n_rounds_exact", m.n_rounds_exact},
                 {"n_rounds", m.n_rounds},
                 {"residual_trade", m.residual_trade},
                 {"myopic_cost", cmp.myopic_cost},
                 {"equilibrium_cost", cmp.equilibrium_cost},
                 {"myopic_first_trade", m.trades.front()},
                 {"equilibrium_first_trade", cmp.equilibrium.strategies(0, 0)},
                 {"comparison_points", cmp.myopic_padded.size()}});
}

void proc_tim(const ExperimentConfig& cfg, const ProcedureSpec& p, Sink& sink) {
  ExecutionProblem prob;
  if (p.params.contains("problem")) {
    prob = problem_from_json(p.params.at("problem"));
  } else {
    const GameSpec game = game_of(cfg, p);
    prob.grid = game.grid;
    prob.kernel = game.kernel;
    prob.theta = game.theta;
    prob.inventory = game.inventories.front();
  }
  const Vector eta = optimal_schedule(prob);
  sink.file(p.name + "_schedule.csv", schedule_csv(eta, prob.grid));
  Json report{{"problem", to_json(prob)}, {"schedule", vec(eta)}};
  if (prob.grid.n_points() >= 3) report["shape"] = shape_json(shape_report(eta, cfg.tol));
  if (p.params.contains("k_shift")) {
    const double k = param(p, "k_shift", 0.0);
    const Vector moved = kernel_shift_schedule(prob, k);
    report["k_shift"] = k;
    report["shift_max_change"] = (moved - eta).cwiseAbs().maxCoeff();
  }
  sink.json(p.name + ".json", report);
}

void proc_implied_price(const ExperimentConfig& cfg, const ProcedureSpec& p, Sink& sink) {
  const GameSpec game = game_of(cfg, p);
  const auto agent = static_cast<std::size_t>(param(p, "agent", 0.0));
  if (agent >= game.inventories.size()) throw Error(ErrorCode::InvalidArgument, "agent index out of range");
  const Equilibrium eq = solve_game(game);
  const KernelMatrices mats = build_matrices(game.kernel, game.grid, game.theta);
  const Vector aggregate = eq.strategies.colwise().sum().transpose();
  const Vector drift = aggregate_drift(mats, aggregate);

  const ImpliedKernel implied = implied_kernel_price(eq.row(agent), drift);
  const ImpliedKernel unit = scale_to_unit(implied);
  const double x = param(p, "inventory", game.inventories[agent]);
  const ImpliedKernel ac = ac_flow_variant(drift, x, game.grid.n_steps());

  sink.file(p.name + "_drift.csv",
            columns_csv({"t", "aggregate_flow", "drift"}, {times_of(game.grid), aggregate, drift}));
  sink.file(p.name + "_kernel.csv", kernel_csv(implied.g, game.grid));
  sink.file(p.name + "_ac_kernel.csv", kernel_csv(ac.g, game.grid));
  sink.json(p.name + ".json", Json{{"game", to_json(game)},
                                   {"agent", agent},
                                   {"g0", implied.g(0)},
                                   {"g_range", implied.g.maxCoeff() - implied.g.minCoeff()},
                                   {"implied", to_json(implied)},
                                   {"scaled", to_json(unit)},
                                   {"ac_flow_variant", to_json(ac)},
                                   {"first_aggregate_flow", aggregate(0)}});
}

void proc_implied_exec(const ExperimentConfig& cfg, const ProcedureSpec& p, Sink& sink) {
  const GameSpec game = game_of(cfg, p);
  const Vector xi = target_schedule(game, p);
  const double x = param(p, "inventory", xi.sum());
  const HSystem sys = solve_h(build_h(xi), param(p, "rank_tol", 1e-10));

  Json report{{"game", to_json(game)}, {"schedule", vec(xi)}, {"h_system", to_json(sys)}};
  const Vector g_part = to_vector(kernel_from_h_solution(sys.particular, game.theta, game.grid).values);
  sink.file(p.name + "_particular_kernel.csv", kernel_csv(g_part, game.grid));

  try {
    const double beta = linear_implied_slope(xi, game.theta, game.grid.n_steps(), x,
                                             game.grid.horizon(), std::max(cfg.tol, 1e-8));
    const LinearKernel lin = linear_implied_kernel(beta, game.grid.horizon());
    Vector g_lin(static_cast<Eigen::Index>(game.grid.n_points()));
    for (std::size_t k = 0; k < game.grid.n_points(); ++k)
      g_lin(static_cast<Eigen::Index>(k)) = eval_kernel(lin, game.grid[k]);
    Vector pi = g_lin;
    pi(0) += 2.0 * game.theta;
    report["linear"] = Json{{"alpha", lin.alpha},
                            {"beta", beta},
                            {"membership_residual", membership_residual(sys, pi)}};
    if (const auto* c = std::get_if<ConstantKernel>(&game.kernel))
      report["linear"]["beta_closed_form"] =
          linear_slope_closed_form(c->g1, game.theta, game.grid.n_steps());
    sink.file(p.name + "_linear_kernel.csv", kernel_csv(g_lin, game.grid));
  } catch (const Error& e) {
    report["linear"] = Json{{"error", e.what()}};
  }
  sink.json(p.name + ".json", report);
}

void proc_fit(const ExperimentConfig& cfg, const ProcedureSpec& p, Sink& sink) {
  const GameSpec game = game_of(cfg, p);
  const Vector xi = target_schedule(game, p);
  const double x = param(p, "inventory", xi.sum());

  std::vector<std::string> families{"polynomial", "exponential", "power_law"};
  if (p.params.contains("families")) families = p.params.at("families").get<std::vector<std::string>>();
  FitOptions opts;
  opts.max_iterations = static_cast<int>(param(p, "max_iterations", opts.max_iterations));

  Json fits = Json::array();
  for (const auto& name : families) {
    std::vector<double> init;
    if (p.params.contains("init") && p.params.at("init").contains(name))
      init = p.params.at("init").at(name).get<std::vector<double>>();
    fits.push_back(to_json(fit_parametric(xi, fit_family_from_string(name), game.grid, game.theta, x,
                                          init, opts)));
  }
  Json report{{"game", to_json(game)}, {"fits", fits}};

  if (p.params.contains("nonparametric")) {
    const Json& np = p.params.at("nonparametric");
    const auto n_exp = np.value("exponential_starts", std::size_t{10});
    const auto n_pow = np.value("power_law_starts", std::size_t{10});
    const auto rounds = np.value("rounds", std::size_t{2});
    const MultiStartRun run = nonparametric_multistart(xi, game.grid, game.theta, x, n_exp, n_pow,
                                                       cfg.seed, rounds);
    double beta = std::nan("");
    try {
      beta = linear_implied_slope(xi, game.theta, game.grid.n_steps(), x, game.grid.horizon(),
                                  std::max(cfg.tol, 1e-8));
    } catch (const Error&) {
    }
    Json per_round = Json::array();
    for (std::size_t r = 0; r < run.rounds.size(); ++r) {
      double sup = 0.0;
      for (const auto& fit : run.rounds[r])
        for (std::size_t k = 0; k < game.grid.n_points(); ++k)
          sup = std::max(sup, std::abs(fit.g(static_cast<Eigen::Index>(k)) -
                                       beta * (game.grid[k] - game.grid.horizon())));
      per_round.push_back(Json{{"mean_schedule_error", run.mean_error[r]},
                               {"max_sup_distance_to_linear", std::isfinite(beta) ? Json(sup) : Json()}});
    }
    report["nonparametric"] = Json{{"exponential_starts", n_exp},
                                   {"power_law_starts", n_pow},
                                   {"seed", cfg.seed},
                                   {"rounds", per_round}};
    if (!run.rounds.empty()) {
      std::vector<std::string> header{"lag"};
      std::vector<Vector> cols{times_of(game.grid)};
      for (std::size_t s = 0; s < run.rounds.back().size(); ++s) {
        header.push_back("fit_" + std::to_string(s + 1));
        cols.push_back(run.rounds.back()[s].g);
      }
      sink.file(p.name + "_nonparametric.csv", columns_csv(header, cols));
    }
  }
  sink.json(p.name + ".json", report);
}

void proc_multiasset(const ExperimentConfig& cfg, const ProcedureSpec& p, Sink& sink) {
  const GameSpec game = game_of(cfg, p);
  Matrix q(2, 2);
  q << 2.0, 1.0, 1.0, 2.0;
  if (p.params.contains("q")) q = matrix_from_json(p.params.at("q"), "q");
  Matrix inv = Matrix::Zero(2, q.rows());
  if (p.params.contains("inventories")) {
    inv = matrix_from_json(p.params.at("inventories"), "inventories");
  } else {
    inv.row(0).setConstant(1.0 / std::sqrt(static_cast<double>(q.rows())));
  }
  const double g1 = param(p, "g1", 1.0);
  const double theta = param(p, "theta", game.theta);

  const MultiAssetEquilibrium eq = multiasset_equilibrium(q, inv, g1, theta, game.grid);
  const std::vector<Matrix> direct = multiasset_direct(q, inv, g1, theta, game.grid);
  double gap = 0.0;
  for (std::size_t a = 0; a < direct.size(); ++a)
    gap = std::max(gap, (direct[a] - eq.strategies[a]).cwiseAbs().maxCoeff());

  sink.file(p.name + ".csv", multiasset_csv(eq.strategies, game.grid));
  sink.json(p.name + ".json", Json{{"q", matrix_json(q)},
                                   {"inventories", matrix_json(inv)},
                                   {"g1", g1},
                                   {"theta", theta},
                                   {"eigenvalues", vec(eq.cross.eigenvalues)},
                                   {"eigenvectors", matrix_json(eq.cross.eigenvectors)},
                                   {"rotated_inventories", matrix_json(eq.rotated_inventories)},
                                   {"warnings", eq.warnings},
                                   {"max_gap_to_direct_solve", gap}});
}

void proc_theta_sweep(const ExperimentConfig& cfg, const ProcedureSpec& p, Sink& sink) {
  GameSpec game = game_of(cfg, p);
  std::vector<double> thetas{0.5, 1.0, 2.0, 5.0, 20.0};
  if (p.params.contains("thetas")) thetas = p.params.at("thetas").get<std::vector<double>>();
  const auto n = static_cast<Eigen::Index>(thetas.size());
  Vector th(n), arb_sup(n), flat_dev(n), first(n), last(n);
  const double x = game.inventories.front();
  std::vector<Vector> directional;
  for (Eigen::Index i = 0; i < n; ++i) {
    game.theta = thetas[static_cast<std::size_t>(i)];
    const Equilibrium eq = solve_game(game);
    const Vector d = eq.row(0);
    const Vector flat = Vector::Constant(d.size(), x / static_cast<double>(d.size()));
    double arb = 0.0;
    for (std::size_t a = 1; a < eq.n_agents(); ++a) arb = std::max(arb, eq.row(a).cwiseAbs().maxCoeff());
    th(i) = game.theta;
    arb_sup(i) = arb;
    flat_dev(i) = (d - flat).cwiseAbs().maxCoeff();
    first(i) = d(0);
    last(i) = d(d.size() - 1);
    directional.push_back(d);
  }
  bool monotone = true;
  for (Eigen::Index i = 1; i < n; ++i)
    if (!(arb_sup(i) < arb_sup(i - 1))) monotone = false;

  sink.file(p.name + ".csv",
            columns_csv({"theta", "arbitrageur_sup", "directional_flat_deviation", "directional_first",
                         "directional_last"},
                        {th, arb_sup, flat_dev, first, last}));
  std::vector<std::string> header{"t"};
  std::vector<Vector> cols{times_of(game.grid)};
  for (Eigen::Index i = 0; i < n; ++i) {
    header.push_back("theta_" + fmt(th(i)));
    cols.push_back(directional[static_cast<std::size_t>(i)]);
  }
  sink.file(p.name + "_directional.csv", columns_csv(header, cols));
  sink.json(p.name + ".json", Json{{"thetas", thetas}, {"arbitrageur_sup_monotone_decreasing", monotone}});
}

const std::map<std::string, Procedure>& registry() {
  static const std::map<std::string, Procedure> r{
      {"equilibrium", proc_equilibrium},   {"myopic", proc_myopic},
      {"tim", proc_tim},                   {"implied-price", proc_implied_price},
      {"implied-exec", proc_implied_exec}, {"fit", proc_fit},
      {"multiasset", proc_multiasset},     {"theta-sweep", proc_theta_sweep},
  };
  return r;
}

Json config_identity(const ExperimentConfig& cfg) {
  Json j = to_json(cfg);
  j.erase("output_dir");
  return j;
}

}  // namespace

bool ReportBundle::all_ok() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.ok; });
}

const std::vector<std::string>& procedure_kinds() {
  static const std::vector<std::string> kinds{"equilibrium",  "myopic", "tim",        "implied-price",
                                              "implied-exec", "fit",    "multiasset", "theta-sweep"};
  return kinds;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::Io, "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "config must be a JSON object");
  ExperimentConfig cfg;
  cfg.name = j.value("name", cfg.name);
  if (j.contains("game")) cfg.game = game_from_json(j.at("game"));
  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
  if (j.contains("procedures")) {
    if (!j.at("procedures").is_array()) throw Error(ErrorCode::Parse, "procedures must be an array");
    std::set<std::string> seen;
    for (const auto& pj : j.at("procedures")) {
      ProcedureSpec p;
      if (pj.is_string()) {
        p.kind = pj.get<std::string>();
      } else if (pj.is_object() && pj.contains("kind")) {
        p.kind = pj.at("kind").get<std::string>();
        p.params = pj;
        p.params.erase("kind");
        p.params.erase("name");
        p.name = pj.value("name", "");
      } else {
        throw Error(ErrorCode::Parse, "each procedure needs a 'kind'");
      }
      if (!registry().count(p.kind)) throw Error(ErrorCode::Parse, "unknown procedure kind '" + p.kind + "'");
      if (p.name.empty()) p.name = p.kind;
      if (!seen.insert(p.name).second)
        throw Error(ErrorCode::Parse, "procedure name '" + p.name + "' is not unique");
      cfg.procedures.push_back(std::move(p));
    }
  }
  return cfg;
}

Json to_json(const ExperimentConfig& cfg) {
  Json procs = Json::array();
  for (const auto& p : cfg.procedures) {
    Json pj{{"name", p.name}, {"kind", p.kind}};
    for (const auto& [k, v] : p.params.items()) pj[k] = v;
    procs.push_back(pj);
  }
  return Json{{"name", cfg.name},
              {"seed", cfg.seed},
              {"tol", cfg.tol},
              {"output_dir", cfg.output_dir.string()},
              {"game", to_json(cfg.game)},
              {"procedures", procs}};
}

ReportBundle run(const ExperimentConfig& cfg) {
  ReportBundle bundle;
  std::filesystem::create_directories(cfg.output_dir);
  for (const auto& p : cfg.procedures) {
    ProcedureOutcome out;
    out.name = p.name;
    out.kind = p.kind;
    Sink sink(cfg.output_dir, out);
    try {
      const auto it = registry().find(p.kind);
      if (it == registry().end()) throw Error(ErrorCode::Parse, "unknown procedure kind '" + p.kind + "'");
      it->second(cfg, p, sink);
      out.ok = true;
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
    bundle.outcomes.push_back(std::move(out));
  }

  Json procs = Json::array();
  for (const auto& o : bundle.outcomes) {
    Json files = Json::array();
    for (const auto& f : o.files) {
      const std::string text = read_text(cfg.output_dir / f);
      files.push_back(Json{{"path", f}, {"sha256", sha256_hex(text)}, {"bytes", text.size()}});
    }
    Json pj{{"name", o.name}, {"kind", o.kind}, {"status", o.ok ? "ok" : "error"}};
    if (!o.ok) pj["error"] = o.error;
    pj["files"] = files;
    procs.push_back(pj);
  }
  const Json identity = config_identity(cfg);
  const Json manifest{{"name", cfg.name},
                      {"version", IMPACT_VERSION},
                      {"seed", cfg.seed},
                      {"config_sha256", sha256_hex(identity.dump())},
                      {"config", identity},
                      {"procedures", procs}};
  bundle.manifest = cfg.output_dir / "manifest.json";
  write_text(bundle.manifest, manifest.dump(2) + "\n");
  return bundle;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{
      "fig-equilibrium",   "theta-sweep",      "table-fits", "fig-nonparametric",
      "fig-implied-price", "fig-implied-exec", "fig-myopic", "fig-tim",
      "fig-multiasset",    "all"};
  return names;
}

ExperimentConfig preset(std::string_view name) {
  ExperimentConfig cfg;
  cfg.name = std::string(name);
  auto add = [&cfg](std::string n, std::string kind, Json params = Json::object()) {
    cfg.procedures.push_back(ProcedureSpec{std::move(n), std::move(kind), std::move(params)});
  };
  auto with = [&](std::string_view which) {
    if (which == "fig-equilibrium") {
      add("equilibrium", "equilibrium");
    } else if (which == "theta-sweep") {
      add("theta_sweep", "theta-sweep");
    } else if (which == "table-fits") {
      add("table_fits", "fit");
    } else if (which == "fig-nonparametric") {
      add("nonparametric", "fit",
          Json{{"families", Json::array()},
               {"nonparametric", {{"exponential_starts", 50}, {"power_law_starts", 50}, {"rounds", 2}}}});
    } else if (which == "fig-implied-price") {
      add("implied_price_2", "implied-price");
      add("implied_price_3", "implied-price", Json{{"game", {{"inventories", {1.0, 0.0, 0.0}}}}});
      add("implied_price_5", "implied-price",
          Json{{"game", {{"inventories", {1.0, 0.0, 0.0, 0.0, 0.0}}}}});
    } else if (which == "fig-implied-exec") {
      add("implied_exec", "implied-exec");
    } else if (which == "fig-myopic") {
      add("myopic", "myopic");
    } else if (which == "fig-tim") {
      add("tim_constant", "tim");
      add("tim_linear", "tim",
          Json{{"problem", {{"grid", {{"horizon", 1.0}, {"n_steps", 25}}},
                            {"kernel", {{"family", "linear"}, {"alpha", 1.0}, {"beta", -0.5}}},
                            {"theta", 0.0},
                            {"inventory", 1.0}}},
               {"k_shift", 5.0}});
      add("tim_exponential", "tim",
          Json{{"problem", {{"grid", {{"horizon", 1.0}, {"n_steps", 25}}},
                            {"kernel", {{"family", "exponential"}, {"lambda", 1.0}, {"rho", 1.0}, {"gamma", 0.0}}},
                            {"theta", 1.0},
                            {"inventory", 1.0}}}});
    } else if (which == "fig-multiasset") {
      add("multiasset", "multiasset");
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown preset '" + std::string(which) + "'");
    }
  };
  if (name == "all") {
    for (const auto& n : preset_names())
      if (n != "all") with(n);
  } else {
    with(name);
  }
  return cfg;
}

}  // namespace impact
