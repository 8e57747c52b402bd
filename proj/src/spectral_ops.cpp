#include "biortho/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "biortho/errors.hpp"
#include "biortho/kernels.hpp"

namespace biortho {

Spectrum::Spectrum(IndexSet index_set, std::vector<Complex> lambda)
    : index_set_(std::move(index_set)), lambda_(std::move(lambda)) {
  if (lambda_.size() != index_set_.size()) {
    throw StructuralError("Spectrum: value count does not match the index set");
  }
  for (const auto& z : lambda_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("Spectrum: non-finite eigenvalue");
    }
  }
}

Complex Spectrum::at(int index) const {
  const auto pos = index_set_.position(index);
  if (!pos) throw StructuralError("Spectrum::at: index not in the set");
  return lambda_[*pos];
}

std::optional<int> Spectrum::summability_order() const {
  const std::size_t m = lambda_.size();
  if (m < 8) return std::nullopt;
  std::vector<double> mags(m);
  for (std::size_t i = 0; i < m; ++i) mags[i] = 1.0 + std::abs(lambda_[i]);
  std::sort(mags.begin(), mags.end());
  const std::size_t q1 = m / 4, q2 = m / 2;
  for (int s = 1; s <= 8; ++s) {
    double inner = 0.0, outer = 0.0;
    for (std::size_t i = q1; i < q2; ++i) inner += std::pow(mags[i], -s);
    for (std::size_t i = q2; i < m; ++i) outer += std::pow(mags[i], -s);
    if (outer <= 0.75 * inner) return s;
  }
  return std::nullopt;
}

Spectrum make_h_spectrum(double h, int n) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("make_h_spectrum: h must be > 0");
  IndexSet set = IndexSet::balanced(n);
  std::vector<Complex> lambda;
  lambda.reserve(set.size());
  const double log_h = std::log(h);
  for (int j : set.indices()) lambda.emplace_back(2.0 * std::numbers::pi * j, -log_h);
  return Spectrum(std::move(set), std::move(lambda));
}

Spectrum make_ionkin_spectrum(int n) {
  if (n < 1) throw ValidationError("make_ionkin_spectrum: N must be >= 1");
  IndexSet set = IndexSet::natural(0, 2 * n);
  std::vector<Complex> lambda;
  for (int k : set.indices()) {
    const double xi = (k + 1) / 2;
    lambda.emplace_back(std::pow(2.0 * std::numbers::pi * xi, 2), 0.0);
  }
  return Spectrum(std::move(set), std::move(lambda));
}

SpectralOperator::SpectralOperator(std::shared_ptr<const BiorthogonalSystem> system, Spectrum spectrum)
    : system_(std::move(system)), spectrum_(std::move(spectrum)) {
  if (!system_) throw StructuralError("SpectralOperator: null system");
  if (!(system_->index_set() == spectrum_.index_set())) {
    throw StructuralError("SpectralOperator: system and spectrum index sets differ");
  }
}

CoefficientSequence apply_spectrum(const Spectrum& spectrum, const CoefficientSequence& a) {
  if (!(spectrum.index_set() == a.index_set())) {
    throw StructuralError("apply_spectrum: index sets differ");
  }
  CoefficientSequence out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= spectrum[i];
  return out;
}

GridFunction apply_L(const SpectralOperator& op, const GridFunction& f) {
  const auto& sys = op.system();
  return synthesize_u(sys, apply_spectrum(op.spectrum(), analyze_u(sys, f)));
}

GridFunction apply_L_star(const SpectralOperator& op, const GridFunction& g) {
  const auto& sys = op.system();
  CoefficientSequence c = analyze_v(sys, g);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::conj(op.spectrum()[i]);
  return synthesize_v(sys, c);
}

GridFunction resolvent_kernel(const SpectralOperator& op, Complex lambda, double eps_spec) {
  const auto& sys = op.system();
  const auto& spec = op.spectrum();
  CoefficientSequence c = CoefficientSequence::zero(sys.index_set(), Side::U);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Complex gap = spec[i] - lambda;
    if (std::abs(gap) <= eps_spec) {
      std::ostringstream msg;
      msg << "resolvent: lambda = " << lambda << " lies within " << eps_spec
          << " of the eigenvalue at index " << sys.index_set()[i];
      throw SingularityError(msg.str(), sys.index_set()[i]);
    }
    c[i] = 1.0 / gap;
  }
  return synthesize_u(sys, c);
}

GridFunction resolvent_apply(const SpectralOperator& op, Complex lambda, const GridFunction& f,
                             double eps_spec) {
  return conv_u(op.system(), resolvent_kernel(op, lambda, eps_spec), f);
}

double intertwining_residual(const SpectralOperator& op, const GridFunction& f,
                             const GridFunction& g) {
  const auto& sys = op.system();
  const GridFunction lhs = apply_L(op, conv_u(sys, f, g));
  const double left = h_norm(lhs - conv_u(sys, apply_L(op, f), g));
  const double right = h_norm(lhs - conv_u(sys, f, apply_L(op, g)));
  return std::max(left, right);
}

double intertwining_residual(const BiorthogonalSystem& sys, const CoefficientAction& action,
                             const BilinearMap& k, const BandLimited& f, const BandLimited& g) {
  const auto lift = [&](const BandLimited& in) {
    return band_limited(sys, action(in.coefficients), Side::U);
  };
  const BandLimited lf = lift(f);
  const BandLimited lg = lift(g);
  const GridFunction fg = k(f, g);
  const GridFunction lhs = synthesize_u(sys, action(analyze_u(sys, fg)));
  const double left = h_norm(lhs - k(lf, g));
  const double right = h_norm(lhs - k(f, lg));
  return std::max(left, right);
}

CoefficientSequence ionkin_action(const CoefficientSequence& a) {
  const IndexSet& set = a.index_set();
  CoefficientSequence out = CoefficientSequence::zero(set, a.side());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int k = set[i];
    if (k == 0) continue;
    const double xi = (k + 1) / 2;
    const double freq = 2.0 * std::numbers::pi * xi;
    out[i] += freq * freq * a[i];
    if (k % 2 == 0) {
      if (const auto partner = set.position(k - 1)) out[*partner] += 2.0 * freq * a[i];
    }
  }
  return out;
}

DecayReport decay_order(const BiorthogonalSystem& sys, const Spectrum& spectrum,
                        const GridFunction& f, int k_max) {
  if (k_max < 0) throw ValidationError("decay_order: k_max must be >= 0");
  if (!(sys.index_set() == spectrum.index_set())) {
    throw StructuralError("decay_order: system and spectrum index sets differ");
  }
  const CoefficientSequence c = analyze_u(sys, f);
  const std::size_t n = c.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(spectrum[a]) < std::abs(spectrum[b]);
  });

  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, std::abs(c[i]));
  const double floor = kDecayFloor * peak;

  DecayReport report;
  for (int k = 0; k <= k_max; ++k) {
    double sup = 0.0, inner = 0.0, outer = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t i = order[r];
      const double mag = std::abs(c[i]) > floor ? std::abs(c[i]) : 0.0;
      const double w = mag * std::pow(1.0 + std::abs(spectrum[i]), k);
      sup = std::max(sup, w);
      double& bucket = r < n / 2 ? inner : outer;
      bucket = std::max(bucket, w);
    }
    report.weighted_sup.push_back(sup);
    report.member.push_back(outer <= inner);
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::abs(c[i]);
    if (!(mag > floor) || mag == 0.0) continue;
    const double x = std::log(1.0 + std::abs(spectrum[i]));
    const double y = std::log(mag);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  report.support = used;
  if (used >= 2) {
    const double denom = used * sxx - sx * sx;
    if (denom > 1e-300) report.exponent = -(used * sxy - sx * sy) / denom;
  }
  return report;
}

}  // namespace biortho
