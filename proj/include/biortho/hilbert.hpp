// Discretized L^2(0,1): quadrature grids, grid functions, inner products and
// L^p / H^p norms.
//
// The inner product is conjugate-linear in its second argument,
// (f, g) = sum_i w_i f(x_i) conj(g(x_i)).
#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace biortho {

using Complex = std::complex<double>;

/// A function of x in [0,1] that can be evaluated anywhere, not only on nodes.
using PointFunction = std::function<Complex(double)>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre_rule(int points);

class QuadratureGrid;
using GridPtr = std::shared_ptr<const QuadratureGrid>;

/// Nodes in (0,1) with positive weights realizing the Lebesgue measure.
/// Immutable; shared between grid functions through GridPtr.
class QuadratureGrid {
 public:
  /// Composite rule: `panels` equal panels, `points` Gauss-Legendre nodes each.
  static GridPtr gauss_legendre(int panels, int points);

  /// Arbitrary rule. `exactness_degree` is the polynomial degree the rule
  /// claims to integrate exactly; degrees up to min(8, exactness_degree) are
  /// checked at construction.
  static GridPtr from_rule(std::vector<double> nodes, std::vector<double> weights,
                           std::string rule_id, int exactness_degree);

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  const std::string& rule_id() const { return rule_id_; }
  int exactness_degree() const { return exactness_degree_; }

  /// Panel layout of a composite Gauss-Legendre grid; 0 for other rules.
  int panels() const { return panels_; }
  int points_per_panel() const { return points_; }

  /// Same nodes and weights (pointer identity is the fast path).
  bool same_as(const QuadratureGrid& other) const;

 private:
  QuadratureGrid(std::vector<double> nodes, std::vector<double> weights, std::string rule_id,
                 int exactness_degree, int panels, int points);

  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::string rule_id_;
  int exactness_degree_;
  int panels_;
  int points_;
};

/// Complex values sampled on the nodes of a grid. All values finite.
class GridFunction {
 public:
  GridFunction(GridPtr grid, std::vector<Complex> values);

  static GridFunction zero(GridPtr grid);
  static GridFunction sample(GridPtr grid, const PointFunction& f);

  const GridPtr& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> mutable_values() { return values_; }
  std::size_t size() const { return values_.size(); }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(Complex s);

 private:
  GridPtr grid_;
  std::vector<Complex> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(Complex s, GridFunction a);

/// Pointwise product f*g.
GridFunction pointwise_product(const GridFunction& f, const GridFunction& g);

/// Throws StructuralError unless both functions live on the same grid.
void require_same_grid(const GridFunction& f, const GridFunction& g);

Complex inner_product(const GridFunction& f, const GridFunction& g);

/// (sum_i w_i |f_i|^p)^(1/p); discrete max for p = kInfinity.
double lp_norm(const GridFunction& f, double p);

/// Norm of L^2 cap L^p: max(||f||_2, ||f||_p).
double hp_norm(const GridFunction& f, double p);

/// ||f||_2, the norm of H.
double h_norm(const GridFunction& f);

/// Barycentric Lagrange interpolant through the nodes of each panel of a
/// composite Gauss-Legendre grid. Points outside every panel (only the
/// endpoints 0 and 1) use the nearest panel's polynomial.
PointFunction panel_interpolant(const GridFunction& f);

}  // namespace biortho
