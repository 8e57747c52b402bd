#include <doctest.h>

#include <cmath>
#include <random>

#include "biortho/convolution.hpp"
#include "biortho/errors.hpp"
#include "oracles.hpp"

using namespace biortho;

namespace {

GridPtr grid() { return QuadratureGrid::gauss_legendre(64, 8); }

// five-integral Ionkin convolution at one point, by composite Simpson
Complex ionkin_simpson(const PointFunction& f, const PointFunction& g, double x, int n) {
  const auto piece = [&](double a, double b, auto kernel) {
    return oracle::simpson([&](double t) { return kernel(t) * g(t); }, a, b, n);
  };
  Complex s = 0.0;
  s += 0.5 * piece(x, 1.0, [&](double t) { return f(1.0 + x - t); });
  s += 0.5 * piece(1.0 - x, 1.0, [&](double t) { return f(x - 1.0 + t); });
  s += piece(0.0, x, [&](double t) { return f(x - t); });
  s -= 0.5 * piece(0.0, 1.0 - x, [&](double t) { return f(1.0 - x - t); });
  s += 0.5 * piece(0.0, x, [&](double t) { return f(1.0 + t - x); });
  return s;
}

}  // namespace

TEST_CASE("convolution theorem, commutativity and associativity") {
  std::mt19937_64 rng(21);
  std::vector<BiorthogonalSystem> systems;
  for (double h : {0.5, 2.0}) systems.push_back(make_h_exponential(h, 8, grid()));
  systems.push_back(make_ionkin(8, grid()));
  for (const auto& sys : systems) {
    CAPTURE(sys.system_id());
    const std::size_t band = default_band(sys);
    for (int t = 0; t < 10; ++t) {
      const auto f = random_band_limited(sys, Side::U, band, rng);
      const auto g = random_band_limited(sys, Side::U, band, rng);
      const auto w = random_band_limited(sys, Side::U, band, rng);
      CHECK(convolution_theorem_residual(sys, f.values, g.values) < 1e-9);
      const GridFunction fg = conv_u(sys, f.values, g.values);
      CHECK(h_norm(fg - conv_u(sys, g.values, f.values)) < 1e-9);
      CHECK(h_norm(conv_u(sys, fg, w.values) - conv_u(sys, f.values, conv_u(sys, g.values, w.values))) < 1e-9);
    }
  }
}

TEST_CASE("convolving with a basis member projects onto its index") {
  std::mt19937_64 rng(3);
  const auto sys = make_h_exponential(2.0, 8, grid());
  const auto f = random_band_limited(sys, Side::U, 9, rng);
  const Complex c1 = analyze_u(sys, f.values).at(1);
  const std::size_t pos = *sys.index_set().position(1);
  CHECK(h_norm(conv_u(sys, sys.u(pos), f.values) - c1 * sys.u(pos)) < 1e-12);
}

TEST_CASE("spectral and integral forms agree for the h-exponential system") {
  std::mt19937_64 rng(8);
  for (double h : {0.5, 1.0, 2.0, 5.0}) {
    CAPTURE(h);
    const auto sys = make_h_exponential(h, 8, grid());
    for (int t = 0; t < 3; ++t) {
      const auto f = random_band_limited(sys, Side::U, 9, rng);
      const auto g = random_band_limited(sys, Side::U, 9, rng);
      const GridFunction spectral = conv_u(sys, f.values, g.values);
      CHECK(h_norm(spectral - conv_u_integral_h(h, sys.grid(), f.evaluate, g.evaluate)) < 1e-6);
      // grid-function overload interpolates instead of using exact evaluators
      CHECK(h_norm(spectral - conv_u_integral_h(h, f.values, g.values)) < 1e-6);
    }
  }
}

TEST_CASE("at h = 1 the integral form is circular convolution") {
  std::mt19937_64 rng(12);
  const auto sys = make_h_exponential(1.0, 8, grid());
  const auto f = random_band_limited(sys, Side::U, 9, rng);
  const auto g = random_band_limited(sys, Side::U, 9, rng);
  const GridFunction integral = conv_u_integral_h(1.0, sys.grid(), f.evaluate, g.evaluate);
  const auto nodes = sys.grid()->nodes();
  double worst = 0.0;
  for (std::size_t i = 0; i < nodes.size(); i += 7) {
    worst = std::max(worst, std::abs(integral[i] - oracle::circular_convolution(f.evaluate, g.evaluate, nodes[i], 64)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("ionkin five-integral convolution matches an independent quadrature") {
  std::mt19937_64 rng(14);
  const auto sys = make_ionkin(4, QuadratureGrid::gauss_legendre(16, 8));
  const auto f = random_band_limited(sys, Side::U, 5, rng);
  const auto g = random_band_limited(sys, Side::U, 5, rng);
  const GridFunction c = conv_ionkin(sys.grid(), f.evaluate, g.evaluate);
  const auto nodes = sys.grid()->nodes();
  for (std::size_t i = 0; i < nodes.size(); i += 11) {
    CHECK(std::abs(c[i] - ionkin_simpson(f.evaluate, g.evaluate, nodes[i], 2000)) < 1e-8);
  }
}

TEST_CASE("uniqueness probe") {
  const auto sys = make_h_exponential(2.0, 6, grid());
  SUBCASE("the integral form is consistent") {
    const double h = sys.params().h;
    const BilinearMap k = [&](const BandLimited& f, const BandLimited& g) {
      return conv_u_integral_h(h, sys.grid(), f.evaluate, g.evaluate);
    };
    const auto verdict = uniqueness_probe(sys, k, 3, 1);
    CHECK(verdict.consistent);
    CHECK_FALSE(verdict.witness.has_value());
  }
  SUBCASE("the pointwise product is refuted with a witness") {
    const BilinearMap k = [](const BandLimited& f, const BandLimited& g) {
      return pointwise_product(f.values, g.values);
    };
    const auto verdict = uniqueness_probe(sys, k, 3, 1);
    CHECK_FALSE(verdict.consistent);
    REQUIRE(verdict.witness.has_value());
    CHECK(verdict.witness->trial == 0);
    CHECK(verdict.witness->f_coefficients.size() == sys.size());
  }
  CHECK_THROWS_AS(uniqueness_probe(sys, {}, 0, 1), ValidationError);
}

TEST_CASE("ionkin hat report") {
  std::mt19937_64 rng(31);
  const auto sys = make_ionkin(4, grid());
  const auto f = random_band_limited(sys, Side::U, 5, rng);
  const auto g = random_band_limited(sys, Side::U, 5, rng);
  const IonkinHatReport rep = ionkin_hat_report(sys, f, g);
  // the relations hold up to fixed normalisations: 1/2 at index 0, 1/4 at even indices
  CHECK(rep.zero.scale == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rep.even.scale == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(rep.zero.scaled_residual < 1e-10);
  CHECK(rep.even.scaled_residual < 1e-10);
  CHECK(rep.odd.size() == 3);
  CHECK(rep.best_odd_variant_scaled == "cross-only");
  CHECK(rep.gate_residual == std::max(rep.zero.residual, rep.even.residual));
  CHECK_THROWS_AS(ionkin_hat_report(make_h_exponential(2.0, 4, grid()), f, g), StructuralError);
}
