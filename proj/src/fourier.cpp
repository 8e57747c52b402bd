#include "biortho/fourier.hpp"

#include <cmath>
#include <numbers>

#include "biortho/errors.hpp"
#include "biortho/kernels.hpp"

namespace biortho {

std::string to_string(Side side) {
  switch (side) {
    case Side::U: return "U";
    case Side::V: return "V";
    case Side::raw: return "raw";
  }
  return "raw";
}

CoefficientSequence::CoefficientSequence(IndexSet index_set, std::vector<Complex> values, Side side)
    : index_set_(std::move(index_set)), values_(std::move(values)), side_(side) {
  if (values_.size() != index_set_.size()) {
    throw StructuralError("CoefficientSequence: value count does not match the index set");
  }
  for (const auto& z : values_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("CoefficientSequence: non-finite value");
    }
  }
}

CoefficientSequence CoefficientSequence::zero(IndexSet index_set, Side side) {
  const std::size_t n = index_set.size();
  return CoefficientSequence(std::move(index_set), std::vector<Complex>(n), side);
}

CoefficientSequence CoefficientSequence::indicator(IndexSet index_set, int index) {
  const auto pos = index_set.position(index);
  if (!pos) throw StructuralError("CoefficientSequence::indicator: index not in the set");
  CoefficientSequence a = zero(std::move(index_set));
  a[*pos] = 1.0;
  return a;
}

Complex CoefficientSequence::at(int index) const {
  const auto pos = index_set_.position(index);
  if (!pos) throw StructuralError("CoefficientSequence::at: index not in the set");
  return values_[*pos];
}

namespace {

void require_same_indices(const IndexSet& a, const IndexSet& b) {
  if (!(a == b)) throw StructuralError("index sets do not match");
}

void require_on_system_grid(const BiorthogonalSystem& sys, const GridFunction& f) {
  if (!f.grid()->same_as(*sys.grid())) {
    throw StructuralError("grid function is not sampled on the system's grid");
  }
}

CoefficientSequence analyze(const BiorthogonalSystem& sys, const GridFunction& f, bool u_side) {
  require_on_system_grid(sys, f);
  const auto& k = kernels::active();
  const auto w = sys.grid()->weights();
  std::vector<Complex> c(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const GridFunction& dual = u_side ? sys.v(i) : sys.u(i);
    c[i] = k.weighted_inner(w, f.values(), dual.values());
  }
  return CoefficientSequence(sys.index_set(), std::move(c), u_side ? Side::U : Side::V);
}

GridFunction synthesize(const BiorthogonalSystem& sys, const CoefficientSequence& a, bool u_side) {
  require_same_indices(sys.index_set(), a.index_set());
  const auto& k = kernels::active();
  GridFunction out = GridFunction::zero(sys.grid());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    if (a[i] == Complex{}) continue;
    const GridFunction& member = u_side ? sys.u(i) : sys.v(i);
    k.axpy(a[i], member.values(), out.mutable_values());
  }
  return out;
}

Complex conj_pairing(const CoefficientSequence& a, const CoefficientSequence& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

}  // namespace

CoefficientSequence pointwise_product(const CoefficientSequence& a, const CoefficientSequence& b) {
  require_same_indices(a.index_set(), b.index_set());
  std::vector<Complex> out(a.size());
  kernels::active().multiply(a.values(), b.values(), out);
  return CoefficientSequence(a.index_set(), std::move(out), a.side() == b.side() ? a.side() : Side::raw);
}

CoefficientSequence analyze_u(const BiorthogonalSystem& sys, const GridFunction& f) {
  return analyze(sys, f, true);
}

CoefficientSequence analyze_v(const BiorthogonalSystem& sys, const GridFunction& f) {
  return analyze(sys, f, false);
}

GridFunction synthesize_u(const BiorthogonalSystem& sys, const CoefficientSequence& a) {
  return synthesize(sys, a, true);
}

GridFunction synthesize_v(const BiorthogonalSystem& sys, const CoefficientSequence& a) {
  return synthesize(sys, a, false);
}

Complex l2u_inner(const BiorthogonalSystem& sys, const CoefficientSequence& a,
                  const CoefficientSequence& b) {
  require_same_indices(a.index_set(), b.index_set());
  const CoefficientSequence composed = analyze_v(sys, synthesize_u(sys, b));
  return conj_pairing(a, composed);
}

Complex l2v_inner(const BiorthogonalSystem& sys, const CoefficientSequence& a,
                  const CoefficientSequence& b) {
  require_same_indices(a.index_set(), b.index_set());
  const CoefficientSequence composed = analyze_u(sys, synthesize_v(sys, b));
  return conj_pairing(a, composed);
}

double plancherel_residual(const BiorthogonalSystem& sys, const GridFunction& f,
                           const GridFunction& g) {
  const Complex lhs = inner_product(f, g);
  const Complex rhs = conj_pairing(analyze_u(sys, f), analyze_v(sys, g));
  return std::abs(lhs - rhs);
}

PlancherelNormCheck plancherel_norm_check(const BiorthogonalSystem& sys, const GridFunction& f) {
  PlancherelNormCheck check;
  check.h_norm = h_norm(f);
  check.pairing = conj_pairing(analyze_u(sys, f), analyze_v(sys, f));
  check.imaginary = std::abs(check.pairing.imag());
  check.nonnegative = check.pairing.real() >= 0.0;
  check.residual = std::abs(check.h_norm - std::sqrt(std::max(0.0, check.pairing.real())));
  return check;
}

double transform_duality_residual(const BiorthogonalSystem& sys, const GridFunction& w,
                                  const CoefficientSequence& a) {
  const Complex lhs = conj_pairing(analyze_u(sys, w), a);
  const Complex rhs = inner_product(w, synthesize_v(sys, a));
  return std::abs(lhs - rhs);
}

PointFunction expansion_evaluator(const BiorthogonalSystem& sys, const CoefficientSequence& a,
                                  Side side) {
  require_same_indices(sys.index_set(), a.index_set());
  if (side == Side::raw) throw ValidationError("expansion_evaluator: side must be U or V");
  const bool u_side = side == Side::U;

  if (sys.params().kind == SystemKind::h_exponential) {
    // h^{+-x} * sum_j c_j z^j with z = e^{2 pi i x}, evaluated by Horner.
    int m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != Complex{}) m = std::max(m, std::abs(a.index_set()[i]));
    }
    std::vector<Complex> dense(2 * static_cast<std::size_t>(m) + 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int j = a.index_set()[i];
      if (std::abs(j) <= m) dense[static_cast<std::size_t>(j + m)] = a[i];
    }
    const double log_h = (u_side ? 1.0 : -1.0) * std::log(sys.params().h);
    return [dense = std::move(dense), m, log_h](double x) {
      const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * x);
      Complex s = dense.back();
      for (std::size_t k = dense.size() - 1; k-- > 0;) s = s * z + dense[k];
      return s * std::polar(std::exp(log_h * x), -2.0 * std::numbers::pi * m * x);
    };
  }

  if (sys.params().kind == SystemKind::ionkin) {
    // Split into c_0, sine part S and cosine part C; powers of e^{2 pi i x}
    // replace per-term trig calls.
    std::vector<Complex> sines, cosines;
    Complex c0 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int j = a.index_set()[i];
      if (j == 0) {
        c0 = a[i];
        continue;
      }
      const std::size_t k = static_cast<std::size_t>((j + 1) / 2);
      auto& bucket = j % 2 == 1 ? sines : cosines;
      if (bucket.size() < k) bucket.resize(k);
      bucket[k - 1] = a[i];
    }
    const std::size_t kmax = std::max(sines.size(), cosines.size());
    sines.resize(kmax);
    cosines.resize(kmax);
    return [sines = std::move(sines), cosines = std::move(cosines), c0, u_side](double x) {
      const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * x);
      Complex zk = 1.0, s = 0.0, c = 0.0;
      for (std::size_t k = 0; k < sines.size(); ++k) {
        zk *= z;
        s += sines[k] * zk.imag();
        c += cosines[k] * zk.real();
      }
      if (u_side) return c0 * x + s + x * c;
      return 2.0 * c0 + 4.0 * (1.0 - x) * s + 4.0 * c;
    };
  }

  if (sys.has_formulas()) {
    std::vector<std::pair<int, Complex>> terms;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != Complex{}) terms.emplace_back(a.index_set()[i], a[i]);
    }
    const BasisFormula formula = u_side ? sys.u_formula() : sys.v_formula();
    return [terms = std::move(terms), formula](double x) {
      Complex s = 0.0;
      for (const auto& [index, c] : terms) s += c * formula(index, x);
      return s;
    };
  }

  return panel_interpolant(u_side ? synthesize_u(sys, a) : synthesize_v(sys, a));
}

BandLimited band_limited(const BiorthogonalSystem& sys, const CoefficientSequence& a, Side side) {
  CoefficientSequence coeffs(a.index_set(), std::vector<Complex>(a.values().begin(), a.values().end()),
                             side);
  GridFunction values = side == Side::U ? synthesize_u(sys, coeffs) : synthesize_v(sys, coeffs);
  PointFunction eval = expansion_evaluator(sys, coeffs, side);
  return {std::move(coeffs), std::move(values), std::move(eval)};
}

BandLimited random_band_limited(const BiorthogonalSystem& sys, Side side, std::size_t band,
                                std::mt19937_64& rng) {
  if (band == 0 || band > sys.size()) {
    throw ValidationError("random_band_limited: band must be in 1..size of the index set");
  }
  std::vector<Complex> c = random_gaussian_coefficients(band, rng);
  c.resize(sys.size());
  CoefficientSequence a(sys.index_set(), std::move(c), side);
  const GridFunction raw = side == Side::U ? synthesize_u(sys, a) : synthesize_v(sys, a);
  const double scale = 1.0 / h_norm(raw);
  for (auto& z : a.mutable_values()) z *= scale;
  return band_limited(sys, a, side);
}

std::size_t default_band(const BiorthogonalSystem& sys) {
  const int half = sys.params().n / 2;
  const std::size_t band = 2 * static_cast<std::size_t>(std::max(half, 0)) + 1;
  return std::min(band, sys.size());
}

}  // namespace biortho
