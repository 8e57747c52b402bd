#include <doctest.h>

#include <random>
#include <vector>

#include "biortho/kernels.hpp"

using biortho::kernels::Complex;
namespace kernels = biortho::kernels;

namespace {

struct Inputs {
  std::vector<double> w;
  std::vector<Complex> a, b;
};

Inputs random_inputs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Inputs in;
  for (std::size_t i = 0; i < n; ++i) {
    in.w.push_back(0.5 * (u(rng) + 1.0));
    in.a.emplace_back(u(rng), u(rng));
    in.b.emplace_back(u(rng), u(rng));
  }
  return in;
}

double scale_of(const Inputs& in) { return static_cast<double>(in.w.size()) + 1.0; }

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
  const auto& k = kernels::scalar();
  const Inputs in = random_inputs(37, 3);
  Complex inner = 0.0, sum = 0.0;
  double norm = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < in.w.size(); ++i) {
    inner += in.w[i] * in.a[i] * std::conj(in.b[i]);
    sum += in.w[i] * in.a[i];
    norm += in.w[i] * std::norm(in.a[i]);
    mx = std::max(mx, std::abs(in.a[i]));
  }
  CHECK(std::abs(k.weighted_inner(in.w, in.a, in.b) - inner) < 1e-13);
  CHECK(std::abs(k.weighted_sum(in.w, in.a) - sum) < 1e-13);
  CHECK(k.weighted_norm_sq(in.w, in.a) == doctest::Approx(norm).epsilon(1e-14));
  CHECK(k.max_abs(in.a) == mx);
  CHECK(k.max_abs({}) == 0.0);
}

TEST_CASE("avx2 kernels agree with scalar kernels") {
  const kernels::KernelTable* simd = kernels::avx2();
  if (simd == nullptr) {
    MESSAGE("AVX2 not available on this machine; equivalence test skipped");
    return;
  }
  const auto& ref = kernels::scalar();
  // odd and tiny lengths exercise the remainder paths
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 512u, 1023u}) {
    CAPTURE(n);
    const Inputs in = random_inputs(n, 100 + n);
    const double tol = 1e-14 * scale_of(in);
    CHECK(std::abs(simd->weighted_inner(in.w, in.a, in.b) - ref.weighted_inner(in.w, in.a, in.b)) < tol);
    CHECK(std::abs(simd->weighted_sum(in.w, in.a) - ref.weighted_sum(in.w, in.a)) < tol);
    CHECK(std::abs(simd->weighted_norm_sq(in.w, in.a) - ref.weighted_norm_sq(in.w, in.a)) < tol);
    CHECK(simd->max_abs(in.a) == doctest::Approx(ref.max_abs(in.a)).epsilon(1e-15));

    std::vector<Complex> y1 = in.b, y2 = in.b;
    const Complex alpha(0.3, -1.7);
    ref.axpy(alpha, in.a, y1);
    simd->axpy(alpha, in.a, y2);
    std::vector<Complex> p1(n), p2(n);
    ref.multiply(in.a, in.b, p1);
    simd->multiply(in.a, in.b, p2);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(y1[i] - y2[i]) < 1e-15);
      CHECK(std::abs(p1[i] - p2[i]) < 1e-15);
    }
  }
}

TEST_CASE("active table is one of the known variants") {
  const auto name = kernels::active().name;
  CHECK((name == kernels::scalar().name || (kernels::avx2() && name == kernels::avx2()->name)));
}
