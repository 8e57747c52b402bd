// Weighted sequence spaces l^p(U), l^p(V), the Hausdorff-Young ratios and
// the l^p(U) x l^q(V) duality bound.
//
// With weights U_xi = ||u_xi||_{H^inf}, V_xi = ||v_xi||_{H^inf}:
//   ||a||_{l^p(U)} = (sum |a|^p U^{2-p})^{1/p}   1 <= p <= 2
//                  = (sum |a|^p V^{2-p})^{1/p}   2 <= p < inf
//                  = sup |a| / V                 p = inf
// and l^p(V) swaps U and V.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biortho/fourier.hpp"

namespace biortho {

/// Norm used for the H^inf weights: max(L^2, L^inf) or L^inf alone.
enum class WeightNorm { intersection, sup };

WeightNorm parse_weight_norm(const std::string& s);
std::string to_string(WeightNorm w);

struct LpWeights {
  std::vector<double> u;  // ||u_xi||_{H^inf} by position
  std::vector<double> v;  // ||v_xi||_{H^inf} by position
};

LpWeights lp_weights(const BiorthogonalSystem& sys, WeightNorm norm = WeightNorm::intersection);

double lp_norm_u(const LpWeights& w, const CoefficientSequence& a, double p);
double lp_norm_v(const LpWeights& w, const CoefficientSequence& a, double p);
double lp_norm_u(const BiorthogonalSystem& sys, const CoefficientSequence& a, double p,
                 WeightNorm norm = WeightNorm::intersection);
double lp_norm_v(const BiorthogonalSystem& sys, const CoefficientSequence& a, double p,
                 WeightNorm norm = WeightNorm::intersection);

/// p' = p/(p-1), infinity for p = 1.
double conjugate_exponent(double p);

struct HausdorffYoungReport {
  double p = 1.0;
  double p_conjugate = kInfinity;
  double analysis_ratio = 0.0;   // ||f^||_{l^{p'}(U)} / ||f||_{H^p}
  double synthesis_ratio = 0.0;  // ||F_U^{-1} f^||_{H^{p'}} / ||f^||_{l^p(U)}
  std::optional<double> frame_ratio;  // analysis_ratio / A, p = 2 only
  bool asserted = false;         // a hard bound applies at this p
  bool pass = true;
  std::string note;
};

/// p = 1: both ratios <= 1 + 1e-9. p = 2 on an orthonormal system (h = 1):
/// both ratios equal 1 within 1e-9; otherwise p = 2 reports the analysis
/// ratio relative to the frame constant when `frame_A_sq` is given.
/// 1 < p < 2 is report-only.
HausdorffYoungReport hausdorff_young_report(const BiorthogonalSystem& sys, const GridFunction& f,
                                            double p, WeightNorm norm = WeightNorm::intersection,
                                            std::optional<double> frame_A_sq = std::nullopt);

/// Synthesis direction alone, for an arbitrary sequence a:
/// ||F_U^{-1} a||_{H^{p'}} / ||a||_{l^p(U)}.
double hausdorff_young_synthesis_ratio(const BiorthogonalSystem& sys, const CoefficientSequence& a,
                                       double p, WeightNorm norm = WeightNorm::intersection);

struct DualityReport {
  double p = 1.0;
  double q = kInfinity;
  Complex pairing;     // sum s1(xi) s2(xi), bilinear
  double bound = 0.0;  // ||s1||_{l^p(U)} ||s2||_{l^q(V)}
  double ratio = 0.0;  // |pairing| / bound
  bool pass = true;    // |pairing| <= bound (1 + 1e-9)
};

DualityReport duality_pairing_report(const BiorthogonalSystem& sys, const CoefficientSequence& s1,
                                     const CoefficientSequence& s2, double p,
                                     WeightNorm norm = WeightNorm::intersection);
DualityReport duality_pairing_report(const LpWeights& w, const CoefficientSequence& s1,
                                     const CoefficientSequence& s2, double p);

}  // namespace biortho
