#include "biortho/convolution.hpp"

#include <algorithm>
#include <cmath>

#include "biortho/errors.hpp"
#include "biortho/kernels.hpp"

namespace biortho {

GridFunction conv_u(const BiorthogonalSystem& sys, const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  return synthesize_u(sys, pointwise_product(analyze_u(sys, f), analyze_u(sys, g)));
}

GridFunction conv_v(const BiorthogonalSystem& sys, const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  return synthesize_v(sys, pointwise_product(analyze_v(sys, f), analyze_v(sys, g)));
}

namespace {

// Composite Gauss-Legendre integration of t -> integrand(t) over [a, b].
class PieceIntegrator {
 public:
  PieceIntegrator(const QuadratureGrid& grid, IntegralOptions opts)
      : base_panels_(opts.base_panels > 0 ? opts.base_panels : std::max(grid.panels(), 1)),
        min_panels_(std::max(opts.min_panels, 1)),
        rule_(gauss_legendre_rule(opts.points > 0 ? opts.points
                                                  : std::max(grid.points_per_panel(), 8))) {}

  template <class Integrand>
  Complex operator()(double a, double b, Integrand&& integrand) {
    if (!(b > a)) return 0.0;
    const int panels =
        std::max(min_panels_, static_cast<int>(std::ceil(base_panels_ * (b - a) - 1e-12)));
    const double width = (b - a) / panels;
    const std::size_t m = rule_.nodes.size();
    values_.resize(static_cast<std::size_t>(panels) * m);
    weights_.resize(values_.size());
    for (int p = 0; p < panels; ++p) {
      const double left = a + p * width;
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t idx = static_cast<std::size_t>(p) * m + j;
        const double t = left + 0.5 * width * (rule_.nodes[j] + 1.0);
        values_[idx] = integrand(t);
        weights_[idx] = 0.5 * width * rule_.weights[j];
      }
    }
    return kernels::active().weighted_sum(weights_, values_);
  }

 private:
  int base_panels_;
  int min_panels_;
  GaussRule rule_;
  std::vector<Complex> values_;
  std::vector<double> weights_;
};

void require_panels(const GridFunction& f) {
  if (f.grid()->panels() < 1) {
    throw StructuralError("integral convolution of grid functions needs a composite grid");
  }
}

}  // namespace

GridFunction conv_u_integral_h(double h, const GridPtr& grid, const PointFunction& f,
                               const PointFunction& g, IntegralOptions opts) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("conv_u_integral_h: h must be > 0");
  PieceIntegrator integrate(*grid, opts);
  std::vector<Complex> out;
  out.reserve(grid->size());
  for (double x : grid->nodes()) {
    const Complex head = integrate(0.0, x, [&](double t) { return f(x - t) * g(t); });
    const Complex tail = integrate(x, 1.0, [&](double t) { return f(1.0 + x - t) * g(t); });
    out.push_back(head + tail / h);
  }
  return GridFunction(grid, std::move(out));
}

GridFunction conv_u_integral_h(double h, const GridFunction& f, const GridFunction& g,
                               IntegralOptions opts) {
  require_same_grid(f, g);
  require_panels(f);
  return conv_u_integral_h(h, f.grid(), panel_interpolant(f), panel_interpolant(g), opts);
}

GridFunction conv_ionkin(const GridPtr& grid, const PointFunction& f, const PointFunction& g,
                         IntegralOptions opts) {
  PieceIntegrator integrate(*grid, opts);
  std::vector<Complex> out;
  out.reserve(grid->size());
  for (double x : grid->nodes()) {
    Complex s = 0.0;
    s += 0.5 * integrate(x, 1.0, [&](double t) { return f(1.0 + x - t) * g(t); });
    s += 0.5 * integrate(1.0 - x, 1.0, [&](double t) { return f(x - 1.0 + t) * g(t); });
    s += integrate(0.0, x, [&](double t) { return f(x - t) * g(t); });
    s -= 0.5 * integrate(0.0, 1.0 - x, [&](double t) { return f(1.0 - x - t) * g(t); });
    s += 0.5 * integrate(0.0, x, [&](double t) { return f(1.0 + t - x) * g(t); });
    out.push_back(s);
  }
  return GridFunction(grid, std::move(out));
}

GridFunction conv_ionkin(const GridFunction& f, const GridFunction& g, IntegralOptions opts) {
  require_same_grid(f, g);
  require_panels(f);
  return conv_ionkin(f.grid(), panel_interpolant(f), panel_interpolant(g), opts);
}

double convolution_theorem_residual(const BiorthogonalSystem& sys, const GridFunction& f,
                                    const GridFunction& g) {
  const CoefficientSequence fh = analyze_u(sys, f);
  const CoefficientSequence gh = analyze_u(sys, g);
  const CoefficientSequence ch = analyze_u(sys, synthesize_u(sys, pointwise_product(fh, gh)));
  double worst = 0.0;
  for (std::size_t i = 0; i < ch.size(); ++i) worst = std::max(worst, std::abs(ch[i] - fh[i] * gh[i]));
  return worst;
}

UniquenessVerdict uniqueness_probe(const BiorthogonalSystem& sys, const BilinearMap& k, int trials,
                                   std::uint64_t seed, double tol) {
  if (trials < 1) throw ValidationError("uniqueness_probe: trials must be >= 1");
  std::mt19937_64 rng(seed);
  const std::size_t band = default_band(sys);
  UniquenessVerdict verdict;
  verdict.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const BandLimited f = random_band_limited(sys, Side::U, band, rng);
    const BandLimited g = random_band_limited(sys, Side::U, band, rng);
    const GridFunction out = k(f, g);
    const CoefficientSequence oh = analyze_u(sys, out);
    double coeff_dev = 0.0;
    for (std::size_t i = 0; i < oh.size(); ++i) {
      coeff_dev = std::max(coeff_dev, std::abs(oh[i] - f.coefficients[i] * g.coefficients[i]));
    }
    const double func_dev = h_norm(out - conv_u(sys, f.values, g.values));
    verdict.max_coefficient_deviation = std::max(verdict.max_coefficient_deviation, coeff_dev);
    verdict.max_function_deviation = std::max(verdict.max_function_deviation, func_dev);
    if ((coeff_dev >= tol || func_dev >= tol) && !verdict.witness) {
      verdict.consistent = false;
      verdict.witness = UniquenessWitness{
          t,
          {f.coefficients.values().begin(), f.coefficients.values().end()},
          {g.coefficients.values().begin(), g.coefficients.values().end()},
          coeff_dev,
          func_dev};
    }
  }
  return verdict;
}

namespace {

HatVariant compare(std::string name, const std::vector<Complex>& actual,
                   const std::vector<Complex>& predicted) {
  HatVariant v;
  v.name = std::move(name);
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    v.residual = std::max(v.residual, std::abs(actual[i] - predicted[i]));
    num += std::conj(predicted[i]) * actual[i];
    den += std::norm(predicted[i]);
  }
  v.scale = den > 0.0 ? (num / den).real() : 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    v.scaled_residual = std::max(v.scaled_residual, std::abs(actual[i] - v.scale * predicted[i]));
  }
  return v;
}

}  // namespace

IonkinHatReport ionkin_hat_report(const BiorthogonalSystem& ionkin, const BandLimited& f,
                                  const BandLimited& g, IntegralOptions opts) {
  if (ionkin.params().kind != SystemKind::ionkin) {
    throw StructuralError("ionkin_hat_report: requires the Ionkin system");
  }
  const GridFunction conv = conv_ionkin(ionkin.grid(), f.evaluate, g.evaluate, opts);
  const CoefficientSequence c = analyze_u(ionkin, conv);
  const CoefficientSequence fh = analyze_u(ionkin, f.values);
  const CoefficientSequence gh = analyze_u(ionkin, g.values);
  const int n = ionkin.params().n;

  IonkinHatReport report;
  report.zero = compare("zero", {c.at(0)}, {fh.at(0) * gh.at(0)});

  std::vector<Complex> even_actual, even_pred, odd_actual, printed, middle_odd, cross;
  for (int xi = 1; xi <= n; ++xi) {
    const Complex fo = fh.at(2 * xi - 1), fe = fh.at(2 * xi);
    const Complex go = gh.at(2 * xi - 1), ge = gh.at(2 * xi);
    even_actual.push_back(c.at(2 * xi));
    even_pred.push_back(fe * ge);
    odd_actual.push_back(c.at(2 * xi - 1));
    printed.push_back(fo * ge + fe * ge + fe * go);
    middle_odd.push_back(fo * ge + fo * go + fe * go);
    cross.push_back(fo * ge + fe * go);
  }
  report.even = compare("even", even_actual, even_pred);
  report.odd.push_back(compare("as-printed", odd_actual, printed));
  report.odd.push_back(compare("middle-odd", odd_actual, middle_odd));
  report.odd.push_back(compare("cross-only", odd_actual, cross));

  const auto best = std::min_element(report.odd.begin(), report.odd.end(),
                                     [](const auto& a, const auto& b) { return a.residual < b.residual; });
  const auto best_scaled = std::min_element(
      report.odd.begin(), report.odd.end(),
      [](const auto& a, const auto& b) { return a.scaled_residual < b.scaled_residual; });
  report.best_odd_variant = best->name;
  report.best_odd_variant_scaled = best_scaled->name;
  report.gate_residual = std::max(report.zero.residual, report.even.residual);
  return report;
}

}  // namespace biortho
