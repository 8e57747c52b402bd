#include "biortho/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "biortho/errors.hpp"
#include "biortho/kernels.hpp"

namespace biortho {

IndexSet::IndexSet(std::vector<int> indices, Ordering ordering)
    : indices_(std::move(indices)), ordering_(ordering) {
  std::vector<int> sorted = indices_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("IndexSet: duplicate index");
  }
}

IndexSet IndexSet::balanced(int n) {
  if (n < 0) throw ValidationError("IndexSet::balanced: n must be >= 0");
  std::vector<int> idx{0};
  for (int k = 1; k <= n; ++k) {
    idx.push_back(k);
    idx.push_back(-k);
  }
  return IndexSet(std::move(idx), Ordering::balanced);
}

IndexSet IndexSet::natural(int first, int last) {
  if (last < first) throw ValidationError("IndexSet::natural: empty range");
  std::vector<int> idx;
  for (int k = first; k <= last; ++k) idx.push_back(k);
  return IndexSet(std::move(idx), Ordering::natural);
}

std::string IndexSet::ordering_id() const {
  return ordering_ == Ordering::balanced ? "balanced" : "natural";
}

std::optional<std::size_t> IndexSet::position(int index) const {
  if (ordering_ == Ordering::natural) {
    const long pos = static_cast<long>(index) - indices_.front();
    if (pos >= 0 && pos < static_cast<long>(indices_.size())) return static_cast<std::size_t>(pos);
    return std::nullopt;
  }
  if (index == 0) return 0;
  const std::size_t pos = index > 0 ? 2 * static_cast<std::size_t>(index) - 1
                                    : 2 * static_cast<std::size_t>(-index);
  if (pos < indices_.size()) return pos;
  return std::nullopt;
}

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::h_exponential: return "h-exponential";
    case SystemKind::ionkin: return "ionkin";
    case SystemKind::custom: return "custom";
  }
  return "custom";
}

BiorthogonalSystem::BiorthogonalSystem(std::string system_id, SystemParams params, GridPtr grid,
                                       IndexSet index_set, std::vector<GridFunction> u_family,
                                       std::vector<GridFunction> v_family, BasisFormula u_formula,
                                       BasisFormula v_formula)
    : system_id_(std::move(system_id)),
      params_(params),
      grid_(std::move(grid)),
      index_set_(std::move(index_set)),
      u_(std::move(u_family)),
      v_(std::move(v_family)),
      u_formula_(std::move(u_formula)),
      v_formula_(std::move(v_formula)) {
  if (!grid_) throw StructuralError("BiorthogonalSystem: null grid");
  if (u_.size() != index_set_.size() || v_.size() != index_set_.size()) {
    throw StructuralError("BiorthogonalSystem: family size does not match the index set");
  }
  for (std::size_t i = 0; i < u_.size(); ++i) {
    if (!u_[i].grid()->same_as(*grid_) || !v_[i].grid()->same_as(*grid_)) {
      throw StructuralError("BiorthogonalSystem: member sampled on a different grid");
    }
    const double nu = h_norm(u_[i]);
    const double nv = h_norm(v_[i]);
    if (nu == 0.0 || nv == 0.0) {
      std::ostringstream msg;
      msg << "BiorthogonalSystem: zero member at index " << index_set_[i];
      throw ValidationError(msg.str());
    }
    sup_u_norm_ = std::max(sup_u_norm_, nu);
    sup_v_norm_ = std::max(sup_v_norm_, nv);
  }
}

namespace {

std::vector<GridFunction> sample_family(const GridPtr& grid, const IndexSet& set,
                                        const BasisFormula& formula) {
  std::vector<GridFunction> family;
  family.reserve(set.size());
  for (int index : set.indices()) {
    family.push_back(GridFunction::sample(grid, [&](double x) { return formula(index, x); }));
  }
  return family;
}

}  // namespace

BiorthogonalSystem make_h_exponential(double h, int n, GridPtr grid) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("make_h_exponential: h must be > 0");
  if (n < 0) throw ValidationError("make_h_exponential: N must be >= 0");
  const double log_h = std::log(h);
  BasisFormula u = [log_h](int j, double x) {
    return std::polar(std::exp(log_h * x), 2.0 * std::numbers::pi * j * x);
  };
  BasisFormula v = [log_h](int j, double x) {
    return std::polar(std::exp(-log_h * x), 2.0 * std::numbers::pi * j * x);
  };
  IndexSet set = IndexSet::balanced(n);
  auto u_family = sample_family(grid, set, u);
  auto v_family = sample_family(grid, set, v);
  std::ostringstream id;
  id << "h-exponential(h=" << h << ",N=" << n << ")";
  return BiorthogonalSystem(id.str(), {SystemKind::h_exponential, h, n}, std::move(grid),
                            std::move(set), std::move(u_family), std::move(v_family), std::move(u),
                            std::move(v));
}

BiorthogonalSystem make_ionkin(int n, GridPtr grid) {
  if (n < 1) throw ValidationError("make_ionkin: N must be >= 1");
  BasisFormula u = [](int k, double x) -> Complex {
    if (k == 0) return x;
    const int xi = (k + 1) / 2;
    const double arg = 2.0 * std::numbers::pi * xi * x;
    return (k % 2 == 1) ? std::sin(arg) : x * std::cos(arg);
  };
  BasisFormula v = [](int k, double x) -> Complex {
    if (k == 0) return 2.0;
    const int xi = (k + 1) / 2;
    const double arg = 2.0 * std::numbers::pi * xi * x;
    return (k % 2 == 1) ? 4.0 * (1.0 - x) * std::sin(arg) : 4.0 * std::cos(arg);
  };
  IndexSet set = IndexSet::natural(0, 2 * n);
  auto u_family = sample_family(grid, set, u);
  auto v_family = sample_family(grid, set, v);
  std::ostringstream id;
  id << "ionkin(N=" << n << ")";
  return BiorthogonalSystem(id.str(), {SystemKind::ionkin, 1.0, n}, std::move(grid), std::move(set),
                            std::move(u_family), std::move(v_family), std::move(u), std::move(v));
}

BiorthogonalityReport verify_biorthogonality(const BiorthogonalSystem& sys, double tol) {
  BiorthogonalityReport report;
  report.tolerance = tol;
  const std::size_t n = sys.size();
  report.residuals.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex g = inner_product(sys.u(i), sys.v(j));
      const double r = std::abs(g - (i == j ? 1.0 : 0.0));
      report.residuals[i][j] = r;
      if (i == j) {
        report.max_diagonal_deviation = std::max(report.max_diagonal_deviation, r);
      } else {
        report.max_offdiagonal = std::max(report.max_offdiagonal, r);
      }
    }
  }
  report.max_residual = std::max(report.max_offdiagonal, report.max_diagonal_deviation);
  report.pass = report.max_residual < tol;
  return report;
}

std::vector<Complex> random_gaussian_coefficients(std::size_t count, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<Complex> c(count);
  for (auto& z : c) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = {re, im};
  }
  return c;
}

FrameBounds estimate_frame_bounds(const BiorthogonalSystem& sys, int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("estimate_frame_bounds: trials must be >= 1");
  std::mt19937_64 rng(seed);
  const auto& k = kernels::active();
  FrameBounds fb;
  fb.trials = trials;
  fb.a_sq = fb.b_sq = kInfinity;
  for (int t = 0; t < trials; ++t) {
    const auto coeffs = random_gaussian_coefficients(sys.size(), rng);
    GridFunction g = GridFunction::zero(sys.grid());
    for (std::size_t i = 0; i < sys.size(); ++i) k.axpy(coeffs[i], sys.u(i).values(), g.mutable_values());
    g *= 1.0 / h_norm(g);
    double sum_v = 0.0, sum_u = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
      sum_v += std::norm(inner_product(g, sys.v(i)));
      sum_u += std::norm(inner_product(g, sys.u(i)));
    }
    fb.a_sq = std::min(fb.a_sq, sum_v);
    fb.A_sq = std::max(fb.A_sq, sum_v);
    fb.b_sq = std::min(fb.b_sq, sum_u);
    fb.B_sq = std::max(fb.B_sq, sum_u);
  }
  return fb;
}

}  // namespace biortho
