// The operator L f = sum lambda_xi (f, v_xi) u_xi attached to a system and
// a spectrum, its adjoint, the resolvent as a U-convolution, intertwining
// checks and coefficient-decay diagnostics.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "biortho/convolution.hpp"

namespace biortho {

class Spectrum {
 public:
  Spectrum(IndexSet index_set, std::vector<Complex> lambda);

  const IndexSet& index_set() const { return index_set_; }
  std::span<const Complex> values() const { return lambda_; }
  const Complex& operator[](std::size_t pos) const { return lambda_[pos]; }
  Complex at(int index) const;

  /// Smallest s in 1..8 for which sum (1+|lambda|)^{-s}, taken in order of
  /// increasing |lambda|, looks Cauchy: the sum over the outer half of the
  /// set is at most 3/4 of the sum over the preceding quarter. nullopt if no
  /// s qualifies or the set is too small to judge.
  std::optional<int> summability_order() const;

 private:
  IndexSet index_set_;
  std::vector<Complex> lambda_;
};

/// lambda_j = 2 pi j - i ln h on the balanced set {-N..N}.
Spectrum make_h_spectrum(double h, int n);

/// lambda_0 = 0 and lambda_{2k-1} = lambda_{2k} = (2 pi k)^2 on {0..2N}.
Spectrum make_ionkin_spectrum(int n);

class SpectralOperator {
 public:
  SpectralOperator(std::shared_ptr<const BiorthogonalSystem> system, Spectrum spectrum);

  const BiorthogonalSystem& system() const { return *system_; }
  const Spectrum& spectrum() const { return spectrum_; }

 private:
  std::shared_ptr<const BiorthogonalSystem> system_;
  Spectrum spectrum_;
};

GridFunction apply_L(const SpectralOperator& op, const GridFunction& f);
GridFunction apply_L_star(const SpectralOperator& op, const GridFunction& g);

/// lambda -> (lambda_xi a(xi))
CoefficientSequence apply_spectrum(const Spectrum& spectrum, const CoefficientSequence& a);

inline constexpr double kDefaultEpsSpec = 1e-8;

/// g_lambda = sum u_xi / (lambda_xi - lambda). Throws SingularityError when
/// lambda is within eps_spec of some lambda_xi.
GridFunction resolvent_kernel(const SpectralOperator& op, Complex lambda,
                              double eps_spec = kDefaultEpsSpec);

/// (L - lambda)^{-1} f computed as g_lambda *_U f.
GridFunction resolvent_apply(const SpectralOperator& op, Complex lambda, const GridFunction& f,
                             double eps_spec = kDefaultEpsSpec);

/// max(||L(f*g) - (Lf)*g||, ||L(f*g) - f*(Lg)||) with * = U-convolution.
double intertwining_residual(const SpectralOperator& op, const GridFunction& f,
                             const GridFunction& g);

/// A linear operator acting on U-coefficients.
using CoefficientAction = std::function<CoefficientSequence(const CoefficientSequence&)>;

/// Intertwining residual for an arbitrary operator (given by its action on
/// U-coefficients) and an arbitrary bilinear map.
double intertwining_residual(const BiorthogonalSystem& sys, const CoefficientAction& action,
                             const BilinearMap& k, const BandLimited& f, const BandLimited& g);

/// -d^2/dx^2 on the span of the Ionkin family, which is not diagonal:
/// -(x cos(2 pi k x))'' = (2 pi k)^2 x cos(2 pi k x) + 4 pi k sin(2 pi k x).
CoefficientSequence ionkin_action(const CoefficientSequence& a);

struct DecayReport {
  /// sup_xi |f^(xi)| (1 + |lambda_xi|)^k for k = 0..k_max
  std::vector<double> weighted_sup;
  /// k-th entry: bounded-supremum heuristic for membership in C^k (the
  /// weighted sequence does not peak in the outer half of the spectrum).
  std::vector<bool> member;
  /// e in |f^| ~ (1+|lambda|)^{-e} from a log-log fit; negative values mean
  /// growth. nullopt with fewer than two usable coefficients.
  std::optional<double> exponent;
  std::size_t support = 0;  // coefficients above the relative noise floor
};

/// Relative floor below which coefficients are treated as quadrature noise.
inline constexpr double kDecayFloor = 1e-13;

DecayReport decay_order(const BiorthogonalSystem& sys, const Spectrum& spectrum,
                        const GridFunction& f, int k_max);

}  // namespace biortho
