#include "biortho/campaigns.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "biortho/convolution.hpp"
#include "biortho/errors.hpp"
#include "biortho/lp.hpp"
#include "biortho/spectral_ops.hpp"

namespace biortho::cli {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

namespace {

template <class T>
T field(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config field '" + key + "': " + e.what());
  }
}

}  // namespace

void apply_json(RunConfig& cfg, const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top-level value must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "system") {
      cfg.system = field<std::string>(doc, key);
    } else if (key == "h") {
      cfg.h = field<double>(doc, key);
    } else if (key == "n") {
      cfg.n = field<int>(doc, key);
    } else if (key == "panels") {
      cfg.panels = field<int>(doc, key);
    } else if (key == "points") {
      cfg.points = field<int>(doc, key);
    } else if (key == "tol-biortho") {
      cfg.tol_biortho = field<double>(doc, key);
    } else if (key == "eps-spec") {
      cfg.eps_spec = field<double>(doc, key);
    } else if (key == "trials") {
      cfg.trials = field<int>(doc, key);
    } else if (key == "seed") {
      cfg.seed = field<std::uint64_t>(doc, key);
    } else if (key == "out") {
      cfg.out = field<std::string>(doc, key);
    } else if (key == "weight-norm") {
      try {
        cfg.weight_norm = parse_weight_norm(field<std::string>(doc, key));
      } catch (const ValidationError& e) {
        throw ConfigError("config field 'weight-norm': " + std::string(e.what()));
      }
    } else {
      throw ConfigError("config: unknown field '" + key + "'");
    }
  }
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  apply_json(base, doc);
  return base;
}

void validate(const RunConfig& cfg) {
  if (cfg.system != "h-exponential" && cfg.system != "ionkin") {
    throw ConfigError("config field 'system': expected h-exponential or ionkin, got '" + cfg.system + "'");
  }
  if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) throw ConfigError("config field 'h': must be > 0");
  if (cfg.n < 1) throw ConfigError("config field 'n': must be >= 1");
  if (cfg.panels < 1) throw ConfigError("config field 'panels': must be >= 1");
  if (cfg.points < 1) throw ConfigError("config field 'points': must be >= 1");
  if (!(cfg.tol_biortho > 0.0)) throw ConfigError("config field 'tol-biortho': must be > 0");
  if (!(cfg.eps_spec > 0.0)) throw ConfigError("config field 'eps-spec': must be > 0");
  if (cfg.trials < 0) throw ConfigError("config field 'trials': must be >= 0");
}

json to_json(const RunConfig& cfg) {
  return json{{"system", cfg.system},          {"h", cfg.h},
              {"n", cfg.n},                    {"panels", cfg.panels},
              {"points", cfg.points},          {"tol-biortho", cfg.tol_biortho},
              {"eps-spec", cfg.eps_spec},      {"trials", cfg.trials},
              {"seed", cfg.seed},              {"out", cfg.out},
              {"weight-norm", to_string(cfg.weight_norm)}};
}

bool CampaignResult::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string csv_number(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

}  // namespace

std::string grid_function_csv(const GridFunction& f) {
  std::ostringstream out;
  out << "x,re,im\n";
  const auto nodes = f.grid()->nodes();
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << csv_number(nodes[i]) << ',' << csv_number(f[i].real()) << ',' << csv_number(f[i].imag())
        << '\n';
  }
  return out.str();
}

std::string coefficients_csv(const CoefficientSequence& a) {
  std::ostringstream out;
  out << "index,re,im\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << a.index_set()[i] << ',' << csv_number(a[i].real()) << ',' << csv_number(a[i].imag())
        << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Campaigns

namespace {

struct Context {
  const RunConfig& cfg;
  std::shared_ptr<const BiorthogonalSystem> sys;
  std::mt19937_64 rng;

  int trials(int fallback) const { return cfg.trials > 0 ? cfg.trials : fallback; }
  bool is_h() const { return sys->params().kind == SystemKind::h_exponential; }
};

GridPtr make_grid(const RunConfig& cfg) { return QuadratureGrid::gauss_legendre(cfg.panels, cfg.points); }

std::shared_ptr<const BiorthogonalSystem> make_system(const RunConfig& cfg, const std::string& kind) {
  const GridPtr grid = make_grid(cfg);
  if (kind == "ionkin") return std::make_shared<const BiorthogonalSystem>(make_ionkin(cfg.n, grid));
  return std::make_shared<const BiorthogonalSystem>(make_h_exponential(cfg.h, cfg.n, grid));
}

Spectrum make_spectrum(const BiorthogonalSystem& sys) {
  if (sys.params().kind == SystemKind::ionkin) return make_ionkin_spectrum(sys.params().n);
  return make_h_spectrum(sys.params().h, sys.params().n);
}

void check(CampaignResult& r, std::string name, double value, std::string relation, double limit) {
  bool ok = false;
  if (relation == "<") ok = value < limit;
  else if (relation == "<=") ok = value <= limit;
  else if (relation == ">=") ok = value >= limit;
  else if (relation == ">") ok = value > limit;
  else if (relation == "==") ok = value == limit;
  r.checks.push_back({std::move(name), value, std::move(relation), limit, ok});
}

json coefficients_json(std::span<const Complex> c) {
  json arr = json::array();
  for (const auto& z : c) arr.push_back({z.real(), z.imag()});
  return arr;
}

CampaignResult verify_biortho(Context& ctx) {
  CampaignResult r;
  const auto rep = verify_biorthogonality(*ctx.sys, ctx.cfg.tol_biortho);
  r.metrics = {{"max_residual", rep.max_residual},
               {"max_offdiagonal", rep.max_offdiagonal},
               {"max_diagonal_deviation", rep.max_diagonal_deviation},
               {"sup_u_norm", ctx.sys->sup_u_norm()},
               {"sup_v_norm", ctx.sys->sup_v_norm()},
               {"size", ctx.sys->size()}};
  check(r, "max_gram_residual", rep.max_residual, "<", ctx.cfg.tol_biortho);
  return r;
}

CampaignResult frame_bounds(Context& ctx) {
  CampaignResult r;
  const int trials = ctx.trials(100);
  const FrameBounds fb = estimate_frame_bounds(*ctx.sys, trials, ctx.cfg.seed);
  r.metrics = {{"a_sq", fb.a_sq}, {"A_sq", fb.A_sq}, {"b_sq", fb.b_sq}, {"B_sq", fb.B_sq}, {"trials", trials}};
  check(r, "a_sq_positive", fb.a_sq, ">=", 0.0);
  check(r, "A_sq_minus_a_sq", fb.A_sq - fb.a_sq, ">=", 0.0);
  check(r, "B_sq_minus_b_sq", fb.B_sq - fb.b_sq, ">=", 0.0);
  if (ctx.is_h()) {
    const double h = ctx.sys->params().h;
    const double eps = 1e-6;
    // sum |(g, v_xi)|^2 = ||g h^{-x}||^2 on the span, so a^2, A^2 sit
    // between the extremes of the multiplier h^{-2x}.
    const double v_lo = std::min(1.0, 1.0 / (h * h));
    const double v_hi = std::max(1.0, 1.0 / (h * h));
    const double u_hi = std::max(1.0, h * h);
    r.metrics["analytic_v_lower"] = v_lo;
    r.metrics["analytic_v_upper"] = v_hi;
    r.metrics["analytic_u_upper"] = u_hi;
    check(r, "a_sq_vs_multiplier_min", fb.a_sq, ">=", v_lo - eps);
    check(r, "A_sq_vs_multiplier_max", fb.A_sq, "<=", v_hi + eps);
    check(r, "B_sq_vs_multiplier_max", fb.B_sq, "<=", u_hi + eps);
    if (h == 1.0) {
      const double dev = std::max({std::abs(fb.a_sq - 1.0), std::abs(fb.A_sq - 1.0),
                                   std::abs(fb.b_sq - 1.0), std::abs(fb.B_sq - 1.0)});
      check(r, "orthonormal_bounds_deviation", dev, "<", 1e-10);
    }
  }
  return r;
}

CampaignResult plancherel(Context& ctx) {
  CampaignResult r;
  const auto& sys = *ctx.sys;
  const int trials = ctx.trials(50);
  const std::size_t band = default_band(sys);
  double max_res = 0.0, max_norm_res = 0.0, max_imag = 0.0, max_l2u_imag = 0.0, max_dual = 0.0,
         max_l2u_chain = 0.0;
  bool nonnegative = true;
  for (int t = 0; t < trials; ++t) {
    const BandLimited f = random_band_limited(sys, Side::U, band, ctx.rng);
    const BandLimited g = random_band_limited(sys, Side::U, band, ctx.rng);
    max_res = std::max(max_res, plancherel_residual(sys, f.values, g.values));
    const auto nc = plancherel_norm_check(sys, f.values);
    max_norm_res = std::max(max_norm_res, nc.residual);
    max_imag = std::max(max_imag, nc.imaginary);
    nonnegative = nonnegative && nc.nonnegative;

    const CoefficientSequence fh = analyze_u(sys, f.values);
    const CoefficientSequence gh = analyze_u(sys, g.values);
    max_l2u_imag = std::max(max_l2u_imag, std::abs(l2u_inner(sys, fh, fh).imag()));
    max_l2u_chain = std::max(
        max_l2u_chain,
        std::abs(l2u_inner(sys, fh, gh) - inner_product(synthesize_u(sys, fh), synthesize_u(sys, gh))));

    // conj((p^, q^)_{l2U}) = (q^_*, p^_*)_{l2V}: exact at truncation for p in
    // the V span and q in the U span.
    const BandLimited p = random_band_limited(sys, Side::V, band, ctx.rng);
    const GridFunction& q = g.values;
    const Complex lhs = std::conj(l2u_inner(sys, analyze_u(sys, p.values), analyze_u(sys, q)));
    const Complex rhs = l2v_inner(sys, analyze_v(sys, q), analyze_v(sys, p.values));
    max_dual = std::max(max_dual, std::abs(lhs - rhs));
    if (t == 0) r.csv.push_back({"plancherel_f_coefficients.csv", coefficients_csv(fh)});
  }
  r.metrics = {{"max_parseval_residual", max_res},
               {"max_norm_residual", max_norm_res},
               {"max_norm_pairing_imag", max_imag},
               {"max_l2u_self_imag", max_l2u_imag},
               {"max_l2u_vs_h_inner", max_l2u_chain},
               {"max_conjugate_duality", max_dual},
               {"trials", trials}};
  check(r, "parseval_residual", max_res, "<", 1e-9);
  check(r, "norm_form_residual", max_norm_res, "<", 1e-9);
  check(r, "norm_pairing_imag", max_imag, "<", 1e-12);
  check(r, "norm_pairing_nonnegative", nonnegative ? 1.0 : 0.0, "==", 1.0);
  check(r, "l2u_self_imag", max_l2u_imag, "<", 1e-12);
  check(r, "l2u_vs_h_inner", max_l2u_chain, "<", 1e-10);
  check(r, "conjugate_duality", max_dual, "<", 1e-10);
  return r;
}

CampaignResult conv_theorem(Context& ctx) {
  CampaignResult r;
  const auto& sys = *ctx.sys;
  const int trials = ctx.trials(100);
  const std::size_t band = default_band(sys);
  const FrameBounds fb = estimate_frame_bounds(sys, 100, ctx.cfg.seed);
  const double est_constant = fb.A_sq * sys.sup_u_norm();
  double max_res = 0.0, max_res_v = 0.0, max_comm = 0.0, max_assoc = 0.0, max_est = 0.0;
  for (int t = 0; t < trials; ++t) {
    const BandLimited f = random_band_limited(sys, Side::U, band, ctx.rng);
    const BandLimited g = random_band_limited(sys, Side::U, band, ctx.rng);
    const BandLimited w = random_band_limited(sys, Side::U, band, ctx.rng);
    max_res = std::max(max_res, convolution_theorem_residual(sys, f.values, g.values));
    const GridFunction fg = conv_u(sys, f.values, g.values);
    max_est = std::max(max_est, h_norm(fg) / (est_constant * h_norm(f.values) * h_norm(g.values)));
    max_comm = std::max(max_comm, h_norm(fg - conv_u(sys, g.values, f.values)));
    max_assoc = std::max(max_assoc, h_norm(conv_u(sys, fg, w.values) -
                                           conv_u(sys, f.values, conv_u(sys, g.values, w.values))));

    const BandLimited fv = random_band_limited(sys, Side::V, band, ctx.rng);
    const BandLimited gv = random_band_limited(sys, Side::V, band, ctx.rng);
    const CoefficientSequence lhs = analyze_v(sys, conv_v(sys, fv.values, gv.values));
    const CoefficientSequence rhs =
        pointwise_product(analyze_v(sys, fv.values), analyze_v(sys, gv.values));
    for (std::size_t i = 0; i < lhs.size(); ++i) max_res_v = std::max(max_res_v, std::abs(lhs[i] - rhs[i]));
  }
  r.metrics = {{"max_coefficient_residual", max_res},
               {"max_coefficient_residual_v", max_res_v},
               {"max_commutativity", max_comm},
               {"max_associativity", max_assoc},
               {"norm_bound_constant", est_constant},
               {"max_norm_bound_ratio", max_est},
               {"trials", trials}};
  check(r, "convolution_theorem_u", max_res, "<", 1e-9);
  check(r, "convolution_theorem_v", max_res_v, "<", 1e-9);
  check(r, "commutativity", max_comm, "<", 1e-9);
  check(r, "associativity", max_assoc, "<", 1e-9);
  check(r, "norm_bound", max_est, "<=", 1.0);
  return r;
}

CampaignResult conv_agree(Context& ctx) {
  if (!ctx.is_h()) throw ConfigError("conv-agree requires --system h-exponential");
  CampaignResult r;
  const auto& sys = *ctx.sys;
  const double h = sys.params().h;
  const int trials = ctx.trials(50);
  const std::size_t band = default_band(sys);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const BandLimited f = random_band_limited(sys, Side::U, band, ctx.rng);
    const BandLimited g = random_band_limited(sys, Side::U, band, ctx.rng);
    const GridFunction spectral = conv_u(sys, f.values, g.values);
    const GridFunction integral = conv_u_integral_h(h, sys.grid(), f.evaluate, g.evaluate);
    const double dev = h_norm(spectral - integral);
    if (dev >= 1e-6) {
      r.witnesses.push_back({{"trial", t},
                             {"deviation", dev},
                             {"f", coefficients_json(f.coefficients.values())},
                             {"g", coefficients_json(g.coefficients.values())}});
    }
    worst = std::max(worst, dev);
    if (t == 0) {
      r.csv.push_back({"conv_agree_spectral.csv", grid_function_csv(spectral)});
      r.csv.push_back({"conv_agree_integral.csv", grid_function_csv(integral)});
    }
  }
  r.metrics = {{"max_h_norm_deviation", worst}, {"h", h}, {"trials", trials}};
  check(r, "spectral_vs_integral", worst, "<", 1e-6);
  return r;
}

CampaignResult resolvent(Context& ctx) {
  CampaignResult r;
  const auto& sys = *ctx.sys;
  const SpectralOperator op(ctx.sys, make_spectrum(sys));
  const int trials = ctx.trials(20);
  const std::size_t band = default_band(sys);
  const std::vector<Complex> lambdas{{0.0, 1.0}, {1.0, 1.0}, {-3.0, 0.0}};
  const double eps = ctx.cfg.eps_spec;

  double max_res = 0.0, max_first = 0.0, max_eigen = 0.0;
  for (int t = 0; t < trials; ++t) {
    const BandLimited f = random_band_limited(sys, Side::U, band, ctx.rng);
    std::vector<GridFunction> rf;
    for (const Complex lambda : lambdas) {
      rf.push_back(resolvent_apply(op, lambda, f.values, eps));
      const GridFunction back = apply_L(op, rf.back()) - lambda * rf.back();
      max_res = std::max(max_res, h_norm(back - f.values));
    }
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      for (std::size_t j = i + 1; j < lambdas.size(); ++j) {
        const GridFunction lhs = rf[i] - rf[j];
        const GridFunction rhs =
            (lambdas[i] - lambdas[j]) * resolvent_apply(op, lambdas[i], rf[j], eps);
        max_first = std::max(max_first, h_norm(lhs - rhs));
      }
    }
  }
  for (std::size_t k = 0; k < sys.size(); ++k) {
    for (const Complex lambda : lambdas) {
      const GridFunction got = resolvent_apply(op, lambda, sys.u(k), eps);
      const GridFunction want = (1.0 / (op.spectrum()[k] - lambda)) * sys.u(k);
      max_eigen = std::max(max_eigen, h_norm(got - want));
    }
  }
  r.metrics = {{"max_resolvent_residual", max_res},
               {"max_first_resolvent_identity", max_first},
               {"max_eigenmode_residual", max_eigen},
               {"trials", trials}};
  check(r, "resolvent_composition", max_res, "<", 1e-8);
  check(r, "eigenmode", max_eigen, "<", 1e-9);
  check(r, "first_resolvent_identity", max_first, "<", 1e-7);
  return r;
}

CampaignResult intertwine(Context& ctx) {
  CampaignResult r;
  const auto& sys = *ctx.sys;
  const SpectralOperator op(ctx.sys, make_spectrum(sys));
  const int trials = ctx.trials(50);
  const std::size_t band = default_band(sys);
  double max_res = 0.0, max_coeff = 0.0, max_eigen = 0.0;
  for (int t = 0; t < trials; ++t) {
    const BandLimited f = random_band_limited(sys, Side::U, band, ctx.rng);
    const BandLimited g = random_band_limited(sys, Side::U, band, ctx.rng);
    max_res = std::max(max_res, intertwining_residual(op, f.values, g.values));
    const CoefficientSequence lhs = analyze_u(sys, apply_L(op, conv_u(sys, f.values, g.values)));
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      const Complex want = op.spectrum()[i] * f.coefficients[i] * g.coefficients[i];
      max_coeff = std::max(max_coeff, std::abs(lhs[i] - want));
    }
  }
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const Complex lambda = op.spectrum()[k];
    const double scale = std::max(1.0, std::abs(lambda) * h_norm(sys.u(k)));
    max_eigen = std::max(max_eigen, h_norm(apply_L(op, sys.u(k)) - lambda * sys.u(k)) / scale);
    const double scale_v = std::max(1.0, std::abs(lambda) * h_norm(sys.v(k)));
    max_eigen = std::max(max_eigen,
                         h_norm(apply_L_star(op, sys.v(k)) - std::conj(lambda) * sys.v(k)) / scale_v);
  }
  r.metrics = {{"max_intertwining_residual", max_res},
               {"max_coefficient_residual", max_coeff},
               {"max_relative_eigen_residual", max_eigen},
               {"trials", trials}};
  check(r, "intertwining", max_res, "<", 1e-8);
  check(r, "coefficient_level", max_coeff, "<", 1e-10);
  check(r, "eigenrelations", max_eigen, "<", 1e-9);

  if (sys.params().kind == SystemKind::ionkin) {
    const BilinearMap ionkin_conv = [&sys](const BandLimited& f, const BandLimited& g) {
      return conv_ionkin(sys.grid(), f.evaluate, g.evaluate);
    };
    const Spectrum spec = make_ionkin_spectrum(sys.params().n);
    const CoefficientAction diagonal = [spec](const CoefficientSequence& a) { return apply_spectrum(spec, a); };
    const int ionkin_trials = std::min(trials, 10);
    double max_jordan = 0.0, max_diag = 0.0;
    for (int t = 0; t < ionkin_trials; ++t) {
      const BandLimited f = random_band_limited(sys, Side::U, band, ctx.rng);
      const BandLimited g = random_band_limited(sys, Side::U, band, ctx.rng);
      max_jordan = std::max(max_jordan, intertwining_residual(sys, ionkin_action, ionkin_conv, f, g));
      max_diag = std::max(max_diag, intertwining_residual(sys, diagonal, ionkin_conv, f, g));
    }
    r.metrics["max_ionkin_operator_residual"] = max_jordan;
    r.metrics["max_ionkin_diagonal_residual"] = max_diag;
    check(r, "ionkin_convolution_with_operator", max_jordan, "<", 1e-6);
    check(r, "ionkin_convolution_with_diagonal_spectrum", max_diag, "<", 1e-6);
  }
  return r;
}

CampaignResult hausdorff_young(Context& ctx) {
  CampaignResult r;
  const auto& sys = *ctx.sys;
  const int trials = ctx.trials(100);
  const std::size_t band = default_band(sys);
  const LpWeights w = lp_weights(sys, ctx.cfg.weight_norm);
  const bool orthonormal = ctx.is_h() && sys.params().h == 1.0;
  double max_analysis = 0.0, max_synthesis = 0.0, max_seq_synthesis = 0.0, mid_analysis = 0.0;
  double p2_dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    const BandLimited f = random_band_limited(sys, Side::U, band, ctx.rng);
    const auto rep = hausdorff_young_report(sys, f.values, 1.0, ctx.cfg.weight_norm);
    max_analysis = std::max(max_analysis, rep.analysis_ratio);
    max_synthesis = std::max(max_synthesis, rep.synthesis_ratio);
    mid_analysis = std::max(mid_analysis,
                            hausdorff_young_report(sys, f.values, 1.5, ctx.cfg.weight_norm).analysis_ratio);
    CoefficientSequence a(sys.index_set(), random_gaussian_coefficients(sys.size(), ctx.rng));
    max_seq_synthesis = std::max(max_seq_synthesis,
                                 hp_norm(synthesize_u(sys, a), kInfinity) / lp_norm_u(w, a, 1.0));
    if (orthonormal) {
      const auto rep2 = hausdorff_young_report(sys, f.values, 2.0, ctx.cfg.weight_norm);
      p2_dev = std::max({p2_dev, std::abs(rep2.analysis_ratio - 1.0), std::abs(rep2.synthesis_ratio - 1.0)});
    }
  }
  r.metrics = {{"p1_max_analysis_ratio", max_analysis},
               {"p1_max_synthesis_ratio", max_synthesis},
               {"p1_max_sequence_synthesis_ratio", max_seq_synthesis},
               {"p1.5_max_analysis_ratio", mid_analysis},
               {"weight_norm", to_string(ctx.cfg.weight_norm)},
               {"trials", trials}};
  check(r, "p1_analysis", max_analysis, "<=", 1.0 + 1e-9);
  check(r, "p1_synthesis", max_synthesis, "<=", 1.0 + 1e-9);
  check(r, "p1_sequence_synthesis", max_seq_synthesis, "<=", 1.0 + 1e-9);
  if (orthonormal) {
    r.metrics["p2_max_ratio_deviation"] = p2_dev;
    check(r, "p2_orthonormal_ratios", p2_dev, "<", 1e-9);
  }
  return r;
}

CampaignResult duality(Context& ctx) {
  CampaignResult r;
  const auto& sys = *ctx.sys;
  const int trials = ctx.trials(200);
  const LpWeights w = lp_weights(sys, ctx.cfg.weight_norm);
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0};
  int violations = 0;
  double max_ratio = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CoefficientSequence s1(sys.index_set(), random_gaussian_coefficients(sys.size(), ctx.rng));
    const CoefficientSequence s2(sys.index_set(), random_gaussian_coefficients(sys.size(), ctx.rng));
    for (double p : ps) {
      const DualityReport rep = duality_pairing_report(w, s1, s2, p);
      max_ratio = std::max(max_ratio, rep.ratio);
      if (!rep.pass) {
        ++violations;
        r.witnesses.push_back({{"trial", t}, {"p", p}, {"ratio", rep.ratio}});
      }
    }
  }
  r.metrics = {{"violations", violations},
               {"max_ratio", max_ratio},
               {"weight_norm", to_string(ctx.cfg.weight_norm)},
               {"trials", trials}};
  check(r, "duality_violations", violations, "==", 0.0);
  return r;
}

CampaignResult ionkin_hats(Context& ctx) {
  CampaignResult r;
  const auto sys_ptr = ctx.is_h() ? make_system(ctx.cfg, "ionkin") : ctx.sys;
  const auto& sys = *sys_ptr;
  const int trials = ctx.trials(10);
  const std::size_t band = default_band(sys);
  double gate = 0.0, zero_scale = 0.0, even_scale = 0.0, norm_gate = 0.0;
  std::map<std::string, json> odd;
  std::map<std::string, int> best_counts, best_scaled_counts;
  for (int t = 0; t < trials; ++t) {
    const BandLimited f = random_band_limited(sys, Side::U, band, ctx.rng);
    const BandLimited g = random_band_limited(sys, Side::U, band, ctx.rng);
    const IonkinHatReport rep = ionkin_hat_report(sys, f, g);
    gate = std::max(gate, rep.gate_residual);
    norm_gate = std::max({norm_gate, rep.zero.scaled_residual, rep.even.scaled_residual});
    zero_scale = rep.zero.scale;
    even_scale = rep.even.scale;
    for (const auto& v : rep.odd) {
      auto& entry = odd[v.name];
      if (entry.is_null()) entry = {{"max_residual", 0.0}, {"max_scaled_residual", 0.0}, {"scale", v.scale}};
      entry["max_residual"] = std::max(entry["max_residual"].get<double>(), v.residual);
      entry["max_scaled_residual"] = std::max(entry["max_scaled_residual"].get<double>(), v.scaled_residual);
      entry["scale"] = v.scale;
    }
    ++best_counts[rep.best_odd_variant];
    ++best_scaled_counts[rep.best_odd_variant_scaled];
  }
  const auto mode = [](const std::map<std::string, int>& counts) {
    std::string best;
    int n = -1;
    for (const auto& [name, c] : counts) {
      if (c > n) {
        best = name;
        n = c;
      }
    }
    return best;
  };
  r.metrics = {{"max_gate_residual", gate},
               {"zero_scale", zero_scale},
               {"even_scale", even_scale},
               {"max_gate_residual_after_scale", norm_gate},
               {"odd_variants", odd},
               {"odd_best_as_written", mode(best_counts)},
               {"odd_best_after_scale", mode(best_scaled_counts)},
               {"trials", trials}};
  check(r, "hat_relations_zero_and_even", gate, "<", 1e-8);
  return r;
}

CampaignResult decay(Context& ctx) {
  CampaignResult r;
  const auto& sys = *ctx.sys;
  const Spectrum spec = make_spectrum(sys);
  const int k_max = 6;
  const auto summability = spec.summability_order();
  r.metrics["summability_order"] = summability ? json(*summability) : json(nullptr);
  const auto describe = [&](const DecayReport& d) {
    json j = {{"weighted_sup", d.weighted_sup}, {"member", d.member}, {"support", d.support}};
    j["exponent"] = d.exponent ? json(*d.exponent) : json(nullptr);
    return j;
  };
  if (ctx.is_h()) {
    const double log_h = std::log(sys.params().h);
    const GridFunction smooth = GridFunction::sample(sys.grid(), [&](double x) -> Complex {
      return std::exp(log_h * x + std::cos(2.0 * std::numbers::pi * x));
    });
    const GridFunction ramp =
        GridFunction::sample(sys.grid(), [&](double x) -> Complex { return std::exp(log_h * x) * x; });
    const DecayReport ds = decay_order(sys, spec, smooth, k_max);
    const DecayReport dr = decay_order(sys, spec, ramp, k_max);
    r.metrics["smooth_periodic_bump"] = describe(ds);
    r.metrics["ramp"] = describe(dr);
    check(r, "smooth_exponent_exceeds_k_max", ds.exponent.value_or(0.0), ">", k_max);
    check(r, "ramp_exponent_deviation", std::abs(dr.exponent.value_or(0.0) - 1.0), "<=", 0.2);
    check(r, "summability_order", summability.value_or(0), "==", 2.0);
  } else {
    const GridFunction smooth = GridFunction::sample(sys.grid(), [](double x) -> Complex {
      return x * std::exp(std::cos(2.0 * std::numbers::pi * x));
    });
    r.metrics["smooth"] = describe(decay_order(sys, spec, smooth, k_max));
    check(r, "summability_order", summability.value_or(0), "==", 1.0);
  }
  return r;
}

using CampaignFn = CampaignResult (*)(Context&);

const std::vector<std::pair<std::string, CampaignFn>>& registry() {
  static const std::vector<std::pair<std::string, CampaignFn>> table{
      {"verify-biortho", verify_biortho}, {"frame-bounds", frame_bounds},
      {"plancherel", plancherel},         {"conv-theorem", conv_theorem},
      {"conv-agree", conv_agree},         {"resolvent", resolvent},
      {"intertwine", intertwine},         {"hausdorff-young", hausdorff_young},
      {"duality", duality},               {"ionkin-hats", ionkin_hats},
      {"decay", decay},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    out.push_back("all");
    return out;
  }();
  return names;
}

CampaignResult run_campaign(const std::string& subcommand, const RunConfig& cfg) {
  validate(cfg);
  if (subcommand == "all") {
    CampaignResult all;
    all.subcommand = "all";
    for (const auto& [name, fn] : registry()) {
      if (name == "conv-agree" && cfg.system != "h-exponential") continue;
      CampaignResult part = run_campaign(name, cfg);
      all.metrics[name] = part.metrics;
      for (auto& c : part.checks) {
        c.name = name + "/" + c.name;
        all.checks.push_back(std::move(c));
      }
      for (auto& w : part.witnesses) all.witnesses.push_back({{"subcommand", name}, {"witness", w}});
      for (auto& f : part.csv) all.csv.push_back(std::move(f));
    }
    return all;
  }
  for (const auto& [name, fn] : registry()) {
    if (name != subcommand) continue;
    Context ctx{cfg, make_system(cfg, cfg.system), std::mt19937_64(cfg.seed)};
    CampaignResult result = fn(ctx);
    result.subcommand = name;
    return result;
  }
  throw ConfigError("unknown subcommand '" + subcommand + "'");
}

json report_json(const CampaignResult& result, const RunConfig& cfg, bool with_timestamp) {
  json checks = json::array();
  for (const auto& c : result.checks) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"relation", c.relation},
                      {"limit", c.limit},
                      {"pass", c.pass}});
  }
  json doc = {{"subcommand", result.subcommand},
              {"config", to_json(cfg)},
              {"metrics", result.metrics},
              {"checks", checks},
              {"witnesses", result.witnesses},
              {"pass", result.pass()}};
  if (with_timestamp) {
    const auto now = std::chrono::system_clock::now();
    doc["generated_at"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  }
  return doc;
}

int run(const std::string& subcommand, const RunConfig& cfg, std::ostream& log) {
  CampaignResult result;
  try {
    result = run_campaign(subcommand, cfg);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  }

  for (const auto& c : result.checks) {
    log << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << std::setprecision(6) << c.value << ' '
        << c.relation << ' ' << c.limit << '\n';
  }
  log << result.subcommand << ": " << (result.pass() ? "pass" : "FAIL") << '\n';

  if (!cfg.out.empty()) {
    try {
      const std::filesystem::path dir(cfg.out);
      std::filesystem::create_directories(dir);
      std::ofstream report(dir / (result.subcommand + ".json"));
      report << report_json(result, cfg).dump(2) << '\n';
      if (!report) throw ConfigError("cannot write report to " + dir.string());
      for (const auto& f : result.csv) {
        std::ofstream out(dir / f.name);
        out << f.content;
        if (!out) throw ConfigError("cannot write " + (dir / f.name).string());
      }
    } catch (const std::filesystem::filesystem_error& e) {
      log << "error: " << e.what() << '\n';
      return 2;
    } catch (const ConfigError& e) {
      log << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return result.pass() ? 0 : 1;
}

}  // namespace biortho::cli
