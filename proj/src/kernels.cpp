// Scalar reference kernels and runtime dispatch.

#include "biortho/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace biortho::kernels {
namespace {

Complex inner_scalar(std::span<const double> w, std::span<const Complex> a,
                     std::span<const Complex> b) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += w[i] * (ar * br + ai * bi);
    im += w[i] * (ai * br - ar * bi);
  }
  return {re, im};
}

Complex sum_scalar(std::span<const double> w, std::span<const Complex> a) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    re += w[i] * a[i].real();
    im += w[i] * a[i].imag();
  }
  return {re, im};
}

double norm_sq_scalar(std::span<const double> w, std::span<const Complex> a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
  }
  return acc;
}

double max_abs_scalar(std::span<const Complex> a) {
  double m = 0.0;
  for (const auto& z : a) m = std::max(m, z.real() * z.real() + z.imag() * z.imag());
  return std::sqrt(m);
}

void axpy_scalar(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr)};
  }
}

void multiply_scalar(std::span<const Complex> a, std::span<const Complex> b,
                     std::span<Complex> out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = {ar * br - ai * bi, ar * bi + ai * br};
  }
}

const KernelTable kScalar{
    "scalar", inner_scalar, sum_scalar, norm_sq_scalar, max_abs_scalar, axpy_scalar, multiply_scalar,
};

const KernelTable& select() {
  const char* env = std::getenv("BIORTHO_KERNELS");
  const std::string choice = env ? env : "auto";
  if (choice == "scalar") return kScalar;
  if (const KernelTable* t = avx2()) return *t;
  return kScalar;
}

}  // namespace

const KernelTable& scalar() { return kScalar; }

const KernelTable* avx2() {
#if defined(BIORTHO_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace biortho::kernels
