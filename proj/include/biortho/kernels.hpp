// Inner-loop arithmetic on interleaved complex<double> arrays.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The variant is chosen once at runtime from the CPU
// features; BIORTHO_KERNELS=scalar|avx2|auto overrides the choice. The
// variants differ only in summation order, so results agree to rounding.
#pragma once

#include <complex>
#include <span>
#include <string_view>

namespace biortho::kernels {

using Complex = std::complex<double>;

struct KernelTable {
  std::string_view name;

  /// sum_i w_i * a_i * conj(b_i)
  Complex (*weighted_inner)(std::span<const double> w, std::span<const Complex> a,
                            std::span<const Complex> b);
  /// sum_i w_i * a_i
  Complex (*weighted_sum)(std::span<const double> w, std::span<const Complex> a);
  /// sum_i w_i * |a_i|^2
  double (*weighted_norm_sq)(std::span<const double> w, std::span<const Complex> a);
  /// max_i |a_i|, 0 for an empty array
  double (*max_abs)(std::span<const Complex> a);
  /// y += alpha * x
  void (*axpy)(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
  /// out_i = a_i * b_i
  void (*multiply)(std::span<const Complex> a, std::span<const Complex> b,
                   std::span<Complex> out);
};

const KernelTable& scalar();

/// AVX2 table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2();

/// The table used by the library.
const KernelTable& active();

namespace detail {
const KernelTable* avx2_table();
}

}  // namespace biortho::kernels
