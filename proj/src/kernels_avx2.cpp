// AVX2/FMA kernels. Compiled with -mavx2 -mfma; only reached through
// kernels::avx2() after a CPU feature check.
//
// A __m256d holds two interleaved complex values [re0 im0 re1 im1].

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "biortho/kernels.hpp"

namespace biortho::kernels {
namespace {

inline const double* raw(std::span<const Complex> s) {
  return reinterpret_cast<const double*>(s.data());
}
inline double* raw(std::span<Complex> s) { return reinterpret_cast<double*>(s.data()); }

// [w0 w0 w1 w1]
inline __m256d load_weight_pair(const double* w) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w)), 0x50);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (sum of odd lanes) - (sum of even lanes)
inline double odd_minus_even(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_unpackhi_pd(s, s)) - _mm_cvtsd_f64(s);
}

Complex inner_avx2(std::span<const double> w, std::span<const Complex> a,
                   std::span<const Complex> b) {
  const std::size_t n = w.size();
  const double* pa = raw(a);
  const double* pb = raw(b);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d wa = _mm256_mul_pd(load_weight_pair(w.data() + i), _mm256_loadu_pd(pa + 2 * i));
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_re = _mm256_fmadd_pd(wa, vb, acc_re);
    acc_im = _mm256_fmadd_pd(wa, _mm256_permute_pd(vb, 0x5), acc_im);
  }
  double re = hsum(acc_re);
  double im = odd_minus_even(acc_im);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += w[i] * (ar * br + ai * bi);
    im += w[i] * (ai * br - ar * bi);
  }
  return {re, im};
}

Complex sum_avx2(std::span<const double> w, std::span<const Complex> a) {
  const std::size_t n = w.size();
  const double* pa = raw(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = _mm256_fmadd_pd(load_weight_pair(w.data() + i), _mm256_loadu_pd(pa + 2 * i), acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; i < n; ++i) {
    re += w[i] * a[i].real();
    im += w[i] * a[i].imag();
  }
  return {re, im};
}

double norm_sq_avx2(std::span<const double> w, std::span<const Complex> a) {
  const std::size_t n = w.size();
  const double* pa = raw(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(load_weight_pair(w.data() + i), va), va, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    s += w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
  }
  return s;
}

double max_abs_avx2(std::span<const Complex> a) {
  const std::size_t n = a.size();
  const double* pa = raw(a);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d sq = _mm256_mul_pd(va, va);
    best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) m = std::max(m, a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
  return std::sqrt(m);
}

void axpy_avx2(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  const std::size_t n = x.size();
  const double* px = raw(x);
  double* py = raw(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(ar, vx),
                                          _mm256_mul_pd(ai, _mm256_permute_pd(vx, 0x5)));
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
            y[i].imag() + (alpha.real() * xi + alpha.imag() * xr)};
  }
}

void multiply_avx2(std::span<const Complex> a, std::span<const Complex> b,
                   std::span<Complex> out) {
  const std::size_t n = a.size();
  const double* pa = raw(a);
  const double* pb = raw(b);
  double* po = raw(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d re = _mm256_movedup_pd(va);         // [ar ar ...]
    const __m256d im = _mm256_permute_pd(va, 0xF);    // [ai ai ...]
    const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(re, vb),
                                          _mm256_mul_pd(im, _mm256_permute_pd(vb, 0x5)));
    _mm256_storeu_pd(po + 2 * i, prod);
  }
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ar * bi + ai * br};
  }
}

const KernelTable kAvx2{
    "avx2", inner_avx2, sum_avx2, norm_sq_avx2, max_abs_avx2, axpy_avx2, multiply_avx2,
};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace biortho::kernels
