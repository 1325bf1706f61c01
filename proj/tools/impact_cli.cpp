// impact_cli: runs market impact game experiments and writes CSV/JSON reports.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "impact/error.hpp"
#include "impact/experiment.hpp"

namespace {

struct Common {
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 42;
  double tol = impact::kDefaultTol;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON config file");
  app->add_option("--out", c.out, "output directory")->capture_default_str();
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
  app->add_option("--tol", c.tol, "comparison tolerance")->capture_default_str();
}

impact::Json load(const std::string& path) {
  if (path.empty()) return impact::Json::object();
  try {
    return impact::Json::parse(impact::read_text(path));
  } catch (const impact::Json::parse_error& e) {
    throw impact::Error(impact::ErrorCode::Parse, path + ": " + e.what());
  }
}

int finish(impact::ExperimentConfig cfg, const Common& c, bool seed_set, bool tol_set) {
  cfg.output_dir = c.out;
  if (seed_set) cfg.seed = c.seed;
  if (tol_set) cfg.tol = c.tol;
  const impact::ReportBundle bundle = impact::run(cfg);
  for (const auto& o : bundle.outcomes) {
    if (o.ok)
      std::printf("%-24s ok     %zu file(s)\n", o.name.c_str(), o.files.size());
    else
      std::printf("%-24s ERROR  %s\n", o.name.c_str(), o.error.c_str());
  }
  std::printf("manifest: %s\n", bundle.manifest.string().c_str());
  return bundle.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Market impact games and implied transient impact"};
  app.require_subcommand(1);

  Common common;
  std::string preset_name;

  CLI::App* run_cmd = app.add_subcommand("run", "run a full experiment config");
  add_common(run_cmd, common);
  run_cmd->get_option("--config")->required();

  struct Single {
    const char* command;
    const char* kind;
    const char* help;
  };
  const Single singles[] = {
      {"equilibrium", "equilibrium", "Nash equilibrium of the game"},
      {"myopic", "myopic", "myopic game against the equilibrium"},
      {"tim", "tim", "single-agent optimal execution"},
      {"implied-price", "implied-price", "implied kernel from price drift"},
      {"implied-exec", "implied-exec", "implied kernels from the optimal schedule"},
      {"fit", "fit", "parametric and non-parametric kernel fits"},
      {"multiasset", "multiasset", "multi-asset game via spectral decomposition"},
      {"sweep", "theta-sweep", "equilibria over a range of theta"},
  };
  std::vector<std::pair<CLI::App*, const Single*>> single_cmds;
  for (const auto& s : singles) {
    CLI::App* cmd = app.add_subcommand(s.command, s.help);
    add_common(cmd, common);
    single_cmds.emplace_back(cmd, &s);
  }

  CLI::App* reproduce = app.add_subcommand("reproduce", "run a built-in preset");
  add_common(reproduce, common);
  reproduce->add_option("preset", preset_name, "preset name")
      ->required()
      ->check(CLI::IsMember(impact::preset_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; usage errors share the exception code.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    const bool seed_set = active->count("--seed") > 0;
    const bool tol_set = active->count("--tol") > 0;

    if (active == run_cmd)
      return finish(impact::config_from_json(load(common.config)), common, seed_set, tol_set);
    if (active == reproduce) return finish(impact::preset(preset_name), common, seed_set, tol_set);

    for (const auto& [cmd, s] : single_cmds) {
      if (cmd != active) continue;
      // The config for a single procedure holds its parameters, optionally
      // with a "game" that replaces the default one.
      impact::Json params = load(common.config);
      impact::Json full{{"name", s->command}};
      if (params.contains("game")) {
        full["game"] = params.at("game");
        params.erase("game");
      }
      params["kind"] = s->kind;
      params["name"] = s->command;
      full["procedures"] = impact::Json::array({params});
      return finish(impact::config_from_json(full), common, seed_set, tol_set);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
