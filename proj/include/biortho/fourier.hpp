// U- and V-Fourier analysis/synthesis, the l^2_U and l^2_V inner products,
// and Plancherel diagnostics.
//
//   analyze_u(f)(xi)    = (f, v_xi)        synthesize_u(a) = sum a(xi) u_xi
//   analyze_v(f)(xi)    = (f, u_xi)        synthesize_v(a) = sum a(xi) v_xi
#pragma once

#include <random>
#include <vector>

#include "biortho/hilbert.hpp"
#include "biortho/systems.hpp"

namespace biortho {

enum class Side { U, V, raw };

std::string to_string(Side side);

class CoefficientSequence {
 public:
  CoefficientSequence(IndexSet index_set, std::vector<Complex> values, Side side = Side::raw);

  static CoefficientSequence zero(IndexSet index_set, Side side = Side::raw);
  static CoefficientSequence indicator(IndexSet index_set, int index);

  const IndexSet& index_set() const { return index_set_; }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> mutable_values() { return values_; }
  std::size_t size() const { return values_.size(); }
  Side side() const { return side_; }

  const Complex& operator[](std::size_t pos) const { return values_[pos]; }
  Complex& operator[](std::size_t pos) { return values_[pos]; }
  /// Value at a signed index; throws StructuralError if absent.
  Complex at(int index) const;

 private:
  IndexSet index_set_;
  std::vector<Complex> values_;
  Side side_;
};

/// Pointwise product of two sequences on the same index set.
CoefficientSequence pointwise_product(const CoefficientSequence& a, const CoefficientSequence& b);

CoefficientSequence analyze_u(const BiorthogonalSystem& sys, const GridFunction& f);
CoefficientSequence analyze_v(const BiorthogonalSystem& sys, const GridFunction& f);
GridFunction synthesize_u(const BiorthogonalSystem& sys, const CoefficientSequence& a);
GridFunction synthesize_v(const BiorthogonalSystem& sys, const CoefficientSequence& a);

/// (a, b)_{l^2_U} = sum a(xi) conj((F_V F_U^{-1} b)(xi)), evaluated by the
/// composed operators (U-synthesis, then V-analysis).
Complex l2u_inner(const BiorthogonalSystem& sys, const CoefficientSequence& a,
                  const CoefficientSequence& b);
/// (a, b)_{l^2_V} = sum a(xi) conj((F_U F_V^{-1} b)(xi)).
Complex l2v_inner(const BiorthogonalSystem& sys, const CoefficientSequence& a,
                  const CoefficientSequence& b);

/// |(f, g) - sum f^(xi) conj(g^_*(xi))|. Exact only for f in the span of U.
double plancherel_residual(const BiorthogonalSystem& sys, const GridFunction& f,
                           const GridFunction& g);

struct PlancherelNormCheck {
  double h_norm = 0.0;       // ||f||_H
  Complex pairing;           // sum f^ conj(f^_*)
  double residual = 0.0;     // | ||f|| - sqrt(Re pairing) |
  double imaginary = 0.0;    // |Im pairing|
  bool nonnegative = false;  // Re pairing >= 0
};
PlancherelNormCheck plancherel_norm_check(const BiorthogonalSystem& sys, const GridFunction& f);

/// |sum (F_U w)(xi) conj(a(xi)) - (w, F_V^{-1} a)_H|, the finite form of the
/// transform duality between test functions and coefficient sequences.
double transform_duality_residual(const BiorthogonalSystem& sys, const GridFunction& w,
                                  const CoefficientSequence& a);

/// Off-node evaluator of sum a(xi) u_xi (Side::U) or sum a(xi) v_xi (Side::V).
/// Uses the system's basis formulas when present, else panel interpolation
/// of the synthesized grid values.
PointFunction expansion_evaluator(const BiorthogonalSystem& sys, const CoefficientSequence& a,
                                  Side side);

/// A finite combination of basis members: its coefficients, grid samples and
/// an exact off-node evaluator.
struct BandLimited {
  CoefficientSequence coefficients;
  GridFunction values;
  PointFunction evaluate;
};

BandLimited band_limited(const BiorthogonalSystem& sys, const CoefficientSequence& a, Side side);

/// Random Gaussian coefficients on the first `band` positions of the index
/// set (zero elsewhere), scaled to unit H norm.
BandLimited random_band_limited(const BiorthogonalSystem& sys, Side side, std::size_t band,
                                std::mt19937_64& rng);

/// Positions used for band-limited test inputs: |xi| <= N/2 for balanced
/// sets, 0..2*floor(N/2) for natural ones.
std::size_t default_band(const BiorthogonalSystem& sys);

}  // namespace biortho
