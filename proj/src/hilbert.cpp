#include "biortho/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "biortho/errors.hpp"
#include "biortho/kernels.hpp"

namespace biortho {

GaussRule gauss_legendre_rule(int points) {
  if (points < 1) throw ValidationError("gauss_legendre_rule: points must be >= 1");
  const int n = points;
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureGrid::QuadratureGrid(std::vector<double> nodes, std::vector<double> weights,
                               std::string rule_id, int exactness_degree, int panels, int points)
    : nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      rule_id_(std::move(rule_id)),
      exactness_degree_(exactness_degree),
      panels_(panels),
      points_(points) {
  if (nodes_.empty() || nodes_.size() != weights_.size()) {
    throw ValidationError("QuadratureGrid: nodes and weights must be non-empty and of equal length");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > 0.0 && nodes_[i] < 1.0)) {
      throw ValidationError("QuadratureGrid: node outside the open interval (0,1)");
    }
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw ValidationError("QuadratureGrid: nodes must be strictly increasing");
    }
    if (!(weights_[i] > 0.0)) throw ValidationError("QuadratureGrid: weights must be positive");
  }
  double total = 0.0;
  for (double w : weights_) total += w;
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("QuadratureGrid: weights do not sum to 1");
  }
  const int check_degree = std::min(8, exactness_degree_);
  for (int k = 1; k <= check_degree; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * std::pow(nodes_[i], k);
    if (std::abs(s - 1.0 / (k + 1)) > 1e-10) {
      std::ostringstream msg;
      msg << "QuadratureGrid: rule '" << rule_id_ << "' fails to integrate x^" << k;
      throw ValidationError(msg.str());
    }
  }
}

GridPtr QuadratureGrid::gauss_legendre(int panels, int points) {
  if (panels < 1 || points < 1) {
    throw ValidationError("QuadratureGrid::gauss_legendre: panels and points must be >= 1");
  }
  const GaussRule ref = gauss_legendre_rule(points);
  std::vector<double> nodes, weights;
  nodes.reserve(static_cast<std::size_t>(panels) * points);
  weights.reserve(nodes.capacity());
  const double width = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    const double left = p * width;
    for (int j = 0; j < points; ++j) {
      nodes.push_back(left + 0.5 * width * (ref.nodes[j] + 1.0));
      weights.push_back(0.5 * width * ref.weights[j]);
    }
  }
  std::ostringstream id;
  id << "gauss-legendre-" << panels << "x" << points;
  return GridPtr(new QuadratureGrid(std::move(nodes), std::move(weights), id.str(),
                                    2 * points - 1, panels, points));
}

GridPtr QuadratureGrid::from_rule(std::vector<double> nodes, std::vector<double> weights,
                                  std::string rule_id, int exactness_degree) {
  return GridPtr(new QuadratureGrid(std::move(nodes), std::move(weights), std::move(rule_id),
                                    exactness_degree, 0, 0));
}

bool QuadratureGrid::same_as(const QuadratureGrid& other) const {
  return this == &other || (nodes_ == other.nodes_ && weights_ == other.weights_);
}

GridFunction::GridFunction(GridPtr grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw StructuralError("GridFunction: null grid");
  if (values_.size() != grid_->size()) {
    throw StructuralError("GridFunction: value count does not match grid size");
  }
  for (const auto& z : values_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("GridFunction: non-finite value");
    }
  }
}

GridFunction GridFunction::zero(GridPtr grid) {
  const std::size_t n = grid ? grid->size() : 0;
  return GridFunction(std::move(grid), std::vector<Complex>(n));
}

GridFunction GridFunction::sample(GridPtr grid, const PointFunction& f) {
  if (!grid) throw StructuralError("GridFunction::sample: null grid");
  std::vector<Complex> values;
  values.reserve(grid->size());
  for (double x : grid->nodes()) values.push_back(f(x));
  return GridFunction(std::move(grid), std::move(values));
}

void require_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!f.grid()->same_as(*g.grid())) {
    throw StructuralError("grid functions live on different grids");
  }
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(*this, other);
  kernels::active().axpy(1.0, other.values_, values_);
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(*this, other);
  kernels::active().axpy(-1.0, other.values_, values_);
  return *this;
}

GridFunction& GridFunction::operator*=(Complex s) {
  for (auto& z : values_) z *= s;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(Complex s, GridFunction a) { return a *= s; }

GridFunction pointwise_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  std::vector<Complex> out(f.size());
  kernels::active().multiply(f.values(), g.values(), out);
  return GridFunction(f.grid(), std::move(out));
}

Complex inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  return kernels::active().weighted_inner(f.grid()->weights(), f.values(), g.values());
}

double lp_norm(const GridFunction& f, double p) {
  if (std::isnan(p) || p < 1.0) throw ValidationError("lp_norm: p must be >= 1");
  const auto& k = kernels::active();
  if (std::isinf(p)) return k.max_abs(f.values());
  const auto w = f.grid()->weights();
  if (p == 2.0) return std::sqrt(k.weighted_norm_sq(w, f.values()));
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += w[i] * std::pow(std::abs(f[i]), p);
  return std::pow(acc, 1.0 / p);
}

double hp_norm(const GridFunction& f, double p) {
  const double lp = lp_norm(f, p);
  return std::max(lp_norm(f, 2.0), lp);
}

double h_norm(const GridFunction& f) { return lp_norm(f, 2.0); }

PointFunction panel_interpolant(const GridFunction& f) {
  const auto& grid = *f.grid();
  const int panels = grid.panels();
  const int points = grid.points_per_panel();
  if (panels < 1 || points < 1) {
    throw StructuralError("panel_interpolant: grid has no panel structure");
  }
  const GaussRule ref = gauss_legendre_rule(points);
  std::vector<double> bary(points);
  for (int j = 0; j < points; ++j) {
    double prod = 1.0;
    for (int k = 0; k < points; ++k) {
      if (k != j) prod *= ref.nodes[j] - ref.nodes[k];
    }
    bary[j] = 1.0 / prod;
  }
  auto values = std::make_shared<const std::vector<Complex>>(f.values().begin(), f.values().end());
  return [values, nodes = ref.nodes, bary = std::move(bary), panels, points](double x) {
    const int p = std::clamp(static_cast<int>(std::floor(x * panels)), 0, panels - 1);
    const double t = 2.0 * (x * panels - p) - 1.0;  // panel-local coordinate in [-1,1]
    Complex num = 0.0;
    double den = 0.0;
    const Complex* v = values->data() + static_cast<std::size_t>(p) * points;
    for (int j = 0; j < points; ++j) {
      const double d = t - nodes[j];
      if (d == 0.0) return v[j];
      const double c = bary[j] / d;
      num += c * v[j];
      den += c;
    }
    return num / den;
  };
}

}  // namespace biortho
