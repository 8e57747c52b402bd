#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "biortho/campaigns.hpp"
#include "biortho/lp.hpp"

namespace bc = biortho::cli;

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for biorthogonal expansions, convolutions and spectral operators"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_flag("--help", "Print this help message and exit");

  bc::RunConfig flags;
  std::string config_path;
  std::string weight_norm;

  app.add_option("--config", config_path, "JSON config file (kebab-case keys)");
  auto* system = app.add_option("--system", flags.system, "h-exponential | ionkin");
  auto* h = app.add_option("--h", flags.h, "h parameter of the exponential system");
  auto* n = app.add_option("--n", flags.n, "truncation order N");
  auto* panels = app.add_option("--panels", flags.panels, "quadrature panels");
  auto* points = app.add_option("--points", flags.points, "Gauss-Legendre points per panel");
  auto* trials = app.add_option("--trials", flags.trials, "random trials (0: campaign default)");
  auto* seed = app.add_option("--seed", flags.seed, "RNG seed");
  auto* tol = app.add_option("--tol-biortho", flags.tol_biortho, "biorthogonality tolerance");
  auto* eps = app.add_option("--eps-spec", flags.eps_spec, "resolvent singularity guard");
  auto* out = app.add_option("--out", flags.out, "output directory for JSON/CSV reports");
  auto* wn = app.add_option("--weight-norm", weight_norm, "intersection | sup")
                 ->check(CLI::IsMember({"intersection", "sup"}));

  for (const auto& name : bc::subcommands()) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  bc::RunConfig cfg;
  if (const char* env = std::getenv("BIORTHO_OUT")) cfg.out = env;
  try {
    if (!config_path.empty()) cfg = bc::load_config_file(config_path, cfg);
  } catch (const bc::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  if (system->count()) cfg.system = flags.system;
  if (h->count()) cfg.h = flags.h;
  if (n->count()) cfg.n = flags.n;
  if (panels->count()) cfg.panels = flags.panels;
  if (points->count()) cfg.points = flags.points;
  if (trials->count()) cfg.trials = flags.trials;
  if (seed->count()) cfg.seed = flags.seed;
  if (tol->count()) cfg.tol_biortho = flags.tol_biortho;
  if (eps->count()) cfg.eps_spec = flags.eps_spec;
  if (out->count()) cfg.out = flags.out;
  if (wn->count()) cfg.weight_norm = biortho::parse_weight_norm(weight_norm);

  return bc::run(app.get_subcommands().front()->get_name(), cfg, std::cout);
}
