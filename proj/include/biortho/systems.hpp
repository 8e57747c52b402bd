// Biorthogonal systems {u_xi}, {v_xi} sampled on a quadrature grid.
//
// Built-in systems:
//   h-exponential  u_j = h^x e^{2 pi i j x},  v_j = h^{-x} e^{2 pi i j x},  j = -N..N
//   Ionkin         u_0 = x, u_{2k-1} = sin(2 pi k x), u_{2k} = x cos(2 pi k x),
//                  v_0 = 2, v_{2k-1} = 4(1-x) sin(2 pi k x), v_{2k} = 4 cos(2 pi k x)
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "biortho/hilbert.hpp"

namespace biortho {

enum class Ordering { balanced, natural };

/// Finite ordered set of signed indices. "balanced" is 0, 1, -1, 2, -2, ...;
/// "natural" is ascending. The leading positions of a balanced set are the
/// low frequencies, which is what band-limited test inputs draw from.
class IndexSet {
 public:
  static IndexSet balanced(int n);
  static IndexSet natural(int first, int last);

  std::span<const int> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  int operator[](std::size_t pos) const { return indices_[pos]; }
  Ordering ordering() const { return ordering_; }
  std::string ordering_id() const;

  std::optional<std::size_t> position(int index) const;

  bool operator==(const IndexSet& other) const = default;

 private:
  IndexSet(std::vector<int> indices, Ordering ordering);

  std::vector<int> indices_;
  Ordering ordering_;
};

enum class SystemKind { h_exponential, ionkin, custom };

struct SystemParams {
  SystemKind kind = SystemKind::custom;
  double h = 1.0;  // h-exponential only
  int n = 0;       // truncation order
};

std::string to_string(SystemKind kind);

/// Analytic form of a family: value of the member with signed index `index` at x.
using BasisFormula = std::function<Complex(int index, double x)>;

struct BiorthogonalityReport {
  double max_offdiagonal = 0.0;
  double max_diagonal_deviation = 0.0;
  double max_residual = 0.0;
  std::vector<std::vector<double>> residuals;  // |(u_i, v_j) - delta_ij| by position
  double tolerance = 0.0;
  bool pass = false;
};

class BiorthogonalSystem {
 public:
  /// Rejects size mismatches, foreign grids, and zero members. The formulas
  /// are optional; without them off-node evaluation falls back to panel
  /// interpolation.
  BiorthogonalSystem(std::string system_id, SystemParams params, GridPtr grid, IndexSet index_set,
                     std::vector<GridFunction> u_family, std::vector<GridFunction> v_family,
                     BasisFormula u_formula = {}, BasisFormula v_formula = {});

  const std::string& system_id() const { return system_id_; }
  const SystemParams& params() const { return params_; }
  const GridPtr& grid() const { return grid_; }
  const IndexSet& index_set() const { return index_set_; }
  std::size_t size() const { return index_set_.size(); }

  /// Members by position in the index set.
  const GridFunction& u(std::size_t pos) const { return u_[pos]; }
  const GridFunction& v(std::size_t pos) const { return v_[pos]; }

  bool has_formulas() const { return static_cast<bool>(u_formula_) && static_cast<bool>(v_formula_); }
  const BasisFormula& u_formula() const { return u_formula_; }
  const BasisFormula& v_formula() const { return v_formula_; }

  /// sup over the family of the H norm, the observed uniform bound.
  double sup_u_norm() const { return sup_u_norm_; }
  double sup_v_norm() const { return sup_v_norm_; }

 private:
  std::string system_id_;
  SystemParams params_;
  GridPtr grid_;
  IndexSet index_set_;
  std::vector<GridFunction> u_;
  std::vector<GridFunction> v_;
  BasisFormula u_formula_;
  BasisFormula v_formula_;
  double sup_u_norm_ = 0.0;
  double sup_v_norm_ = 0.0;
};

inline constexpr double kDefaultTolBiortho = 1e-9;

BiorthogonalSystem make_h_exponential(double h, int n, GridPtr grid);
BiorthogonalSystem make_ionkin(int n, GridPtr grid);

BiorthogonalityReport verify_biorthogonality(const BiorthogonalSystem& sys,
                                             double tol = kDefaultTolBiortho);

/// Observed frame bounds, stored squared as (a^2, A^2) for the V side and
/// (b^2, B^2) for the U side.
struct FrameBounds {
  double a_sq = 0.0;
  double A_sq = 0.0;
  double b_sq = 0.0;
  double B_sq = 0.0;
  int trials = 0;
};

/// Random unit-norm probes g in the span of the U family:
/// a^2 <= sum |(g, v_xi)|^2 <= A^2 and b^2 <= sum |(g, u_xi)|^2 <= B^2.
FrameBounds estimate_frame_bounds(const BiorthogonalSystem& sys, int trials, std::uint64_t seed);

/// i.i.d. standard complex Gaussian entries (unit variance in total).
std::vector<Complex> random_gaussian_coefficients(std::size_t count, std::mt19937_64& rng);

}  // namespace biortho
