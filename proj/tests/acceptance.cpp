// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "biortho/campaigns.hpp"
#include "biortho/convolution.hpp"
#include "oracles.hpp"

using namespace biortho;
using cli::CampaignResult;
using cli::RunConfig;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

RunConfig h_config(double h) {
  RunConfig cfg;
  cfg.h = h;
  return cfg;
}

RunConfig ionkin_config() {
  RunConfig cfg;
  cfg.system = "ionkin";
  cfg.n = 8;
  return cfg;
}

std::string label(const RunConfig& cfg) {
  std::ostringstream s;
  if (cfg.system == "ionkin") s << "ionkin";
  else s << "h=" << cfg.h;
  return s.str();
}

// Campaign results are reused across criteria.
const CampaignResult& campaign(const std::string& name, const RunConfig& cfg) {
  static std::map<std::string, CampaignResult> cache;
  const std::string key = name + "|" + cli::to_json(cfg).dump();
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, cli::run_campaign(name, cfg)).first;
  return it->second;
}

const cli::Check& find_check(const CampaignResult& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("missing check " + name + " in " + r.subcommand);
}

void require_checks(Outcome& out, const CampaignResult& r, const std::vector<std::string>& names,
                    const std::string& where) {
  for (const auto& n : names) {
    const auto& c = find_check(r, n);
    out.detail << ' ' << where << ' ' << n << '=' << c.value;
    std::ostringstream what;
    what << where << ' ' << n << ' ' << c.relation << ' ' << c.limit;
    out.require(c.pass, what.str());
  }
}

Outcome biorthogonality() {
  Outcome out;
  const GridPtr grid = QuadratureGrid::gauss_legendre(64, 8);
  for (double h : {0.5, 1.0, 2.0, 5.0}) {
    const auto rep = verify_biorthogonality(make_h_exponential(h, 16, grid));
    out.detail << " h=" << h << ':' << rep.max_residual;
    out.require(rep.max_residual < 1e-10, "h-exponential Gram residual < 1e-10");
  }
  const auto ionkin = make_ionkin(8, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < ionkin.size(); ++i) {
    for (std::size_t j = 0; j < ionkin.size(); ++j) {
      const Complex exact = oracle::exact_inner(oracle::ionkin_u(ionkin.index_set()[i]),
                                                oracle::ionkin_v(ionkin.index_set()[j]));
      worst = std::max(worst, std::abs(inner_product(ionkin.u(i), ionkin.v(j)) - exact));
      worst = std::max(worst, std::abs(exact - (i == j ? 1.0 : 0.0)));
    }
  }
  out.detail << " ionkin vs closed form:" << worst;
  out.require(worst < 1e-9, "ionkin Gram vs closed form < 1e-9");
  return out;
}

Outcome convolution_theorem() {
  Outcome out;
  for (const RunConfig& cfg : {h_config(0.5), h_config(1.0), h_config(2.0), h_config(5.0), ionkin_config()}) {
    require_checks(out, campaign("conv-theorem", cfg), {"convolution_theorem_u", "commutativity", "associativity"},
                   label(cfg));
  }
  return out;
}

Outcome integral_form() {
  Outcome out;
  for (double h : {0.5, 1.0, 2.0, 5.0}) {
    require_checks(out, campaign("conv-agree", h_config(h)), {"spectral_vs_integral"}, label(h_config(h)));
  }
  const GridPtr grid = QuadratureGrid::gauss_legendre(64, 8);
  const auto sys = make_h_exponential(1.0, 16, grid);
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    const auto f = random_band_limited(sys, Side::U, default_band(sys), rng);
    const auto g = random_band_limited(sys, Side::U, default_band(sys), rng);
    const GridFunction integral = conv_u_integral_h(1.0, grid, f.evaluate, g.evaluate);
    std::vector<Complex> dense;
    for (double x : grid->nodes()) dense.push_back(oracle::circular_convolution(f.evaluate, g.evaluate, x, 128));
    worst = std::max(worst, h_norm(integral - GridFunction(grid, dense)));
  }
  out.detail << " h=1 vs dense circular:" << worst;
  out.require(worst < 1e-6, "h = 1 integral form vs dense circular convolution < 1e-6");
  return out;
}

Outcome plancherel() {
  Outcome out;
  for (const RunConfig& cfg : {h_config(0.5), h_config(2.0), h_config(5.0), ionkin_config()}) {
    require_checks(out, campaign("plancherel", cfg), {"parseval_residual", "l2u_self_imag", "conjugate_duality"},
                   label(cfg));
  }
  return out;
}

Outcome frame_bounds() {
  Outcome out;
  const auto& r2 = campaign("frame-bounds", h_config(2.0));
  const double a_sq = r2.metrics["a_sq"], A_sq = r2.metrics["A_sq"];
  out.detail << " h=2 a^2=" << a_sq << " A^2=" << A_sq;
  out.require(a_sq >= 0.25 - 1e-6, "a^2 >= 0.25 - 1e-6");
  out.require(A_sq <= 1.0 + 1e-6, "A^2 <= 1 + 1e-6");
  require_checks(out, campaign("frame-bounds", h_config(1.0)), {"orthonormal_bounds_deviation"}, "h=1");
  return out;
}

Outcome resolvent() {
  Outcome out;
  require_checks(out, campaign("resolvent", h_config(2.0)),
                 {"resolvent_composition", "eigenmode", "first_resolvent_identity"}, "h=2");
  return out;
}

Outcome intertwining() {
  Outcome out;
  for (double h : {0.5, 2.0}) require_checks(out, campaign("intertwine", h_config(h)), {"intertwining"}, label(h_config(h)));
  return out;
}

Outcome hausdorff_young() {
  Outcome out;
  for (const RunConfig& cfg : {h_config(0.5), h_config(2.0), h_config(5.0), ionkin_config()}) {
    require_checks(out, campaign("hausdorff-young", cfg), {"p1_analysis", "p1_synthesis"}, label(cfg));
  }
  require_checks(out, campaign("hausdorff-young", h_config(1.0)), {"p1_analysis", "p1_synthesis", "p2_orthonormal_ratios"},
                 "h=1");
  return out;
}

Outcome duality() {
  Outcome out;
  for (double h : {0.5, 1.0, 2.0}) require_checks(out, campaign("duality", h_config(h)), {"duality_violations"}, label(h_config(h)));
  return out;
}

Outcome ionkin_hats() {
  Outcome out;
  const auto& r = campaign("ionkin-hats", ionkin_config());
  require_checks(out, r, {"hat_relations_zero_and_even"}, "ionkin");
  const std::string best = r.metrics["odd_best_after_scale"].get<std::string>();
  out.detail << " | fitted scales: index 0 x" << r.metrics["zero_scale"].get<double>() << ", even x"
             << r.metrics["even_scale"].get<double>() << ", residual after scaling "
             << r.metrics["max_gate_residual_after_scale"].get<double>()
             << " | odd relation as printed: residual "
             << r.metrics["odd_variants"]["as-printed"]["max_residual"].get<double>()
             << "; best variant " << best << " (scale " << r.metrics["odd_variants"][best]["scale"].get<double>()
             << ", residual " << r.metrics["odd_variants"][best]["max_scaled_residual"].get<double>() << ")";
  return out;
}

Outcome norm_bound() {
  Outcome out;
  for (double h : {0.5, 2.0}) {
    const auto& r = campaign("conv-theorem", h_config(h));
    out.detail << ' ' << label(h_config(h)) << " A^2*sup|u|=" << r.metrics["norm_bound_constant"].get<double>();
    require_checks(out, r, {"norm_bound"}, "ratio");
  }
  return out;
}

Outcome determinism() {
  Outcome out;
  const RunConfig cfg;
  const std::string a = cli::report_json(cli::run_campaign("all", cfg), cfg, false).dump();
  const std::string b = cli::report_json(cli::run_campaign("all", cfg), cfg, false).dump();
  out.detail << " report bytes=" << a.size();
  out.require(a == b, "identical reports for identical config and seed");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"biorthogonality", biorthogonality},
      {"convolution theorem", convolution_theorem},
      {"integral convolution form", integral_form},
      {"plancherel", plancherel},
      {"frame bounds", frame_bounds},
      {"resolvent", resolvent},
      {"intertwining", intertwining},
      {"hausdorff-young endpoint", hausdorff_young},
      {"sequence duality", duality},
      {"ionkin hat relations", ionkin_hats},
      {"convolution norm bound", norm_bound},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " exception: " << e.what();
    }
    if (!out.pass) ++failed;
    std::printf("[%s] %2zu %s:%s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                out.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
