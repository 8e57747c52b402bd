#include <doctest.h>

#include <cmath>
#include <numbers>

#include "biortho/errors.hpp"
#include "biortho/hilbert.hpp"
#include "oracles.hpp"

using namespace biortho;

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
  for (int p : {1, 2, 3, 5, 8, 12}) {
    CAPTURE(p);
    const GaussRule r = gauss_legendre_rule(p);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int d = 0; d <= 2 * p - 1; ++d) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
      const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(s - exact) < 1e-13);
    }
  }
}

TEST_CASE("composite grid weights and exactness") {
  const GridPtr g = QuadratureGrid::gauss_legendre(64, 8);
  CHECK(g->size() == 512);
  double wsum = 0.0;
  for (double w : g->weights()) wsum += w;
  CHECK(std::abs(wsum - 1.0) < 1e-12);
  CHECK(g->exactness_degree() == 15);
  for (int d = 0; d <= std::min(8, g->exactness_degree()); ++d) {
    const auto f = GridFunction::sample(g, [d](double x) { return Complex(std::pow(x, d)); });
    const Complex integral = inner_product(f, GridFunction::sample(g, [](double) { return Complex(1.0); }));
    CHECK(std::abs(integral - 1.0 / (d + 1)) < 1e-10);
  }
  for (double x : g->nodes()) {
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(QuadratureGrid::gauss_legendre(0, 8), ValidationError);
  CHECK_THROWS_AS(QuadratureGrid::gauss_legendre(4, 0), ValidationError);
  CHECK_THROWS_AS(QuadratureGrid::from_rule({0.5}, {0.5}, "bad", 0), ValidationError);
  CHECK_THROWS_AS(QuadratureGrid::from_rule({0.2, 0.1}, {0.5, 0.5}, "unsorted", 0), ValidationError);
  const GridPtr ok = QuadratureGrid::from_rule({0.25, 0.75}, {0.5, 0.5}, "midpoint2", 1);
  CHECK(ok->size() == 2);
}

TEST_CASE("grid functions reject mismatched grids and bad values") {
  const GridPtr a = QuadratureGrid::gauss_legendre(4, 4);
  const GridPtr b = QuadratureGrid::gauss_legendre(4, 5);
  CHECK_THROWS_AS(GridFunction(a, std::vector<Complex>(3)), StructuralError);
  std::vector<Complex> bad(a->size());
  bad[2] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(GridFunction(a, bad), ValidationError);
  const auto fa = GridFunction::zero(a);
  const auto fb = GridFunction::zero(b);
  CHECK_THROWS_AS(inner_product(fa, fb), StructuralError);
  CHECK_THROWS_AS((void)(fa + fb), StructuralError);
  // same rule built twice counts as the same grid
  CHECK_NOTHROW(inner_product(fa, GridFunction::zero(QuadratureGrid::gauss_legendre(4, 4))));
}

TEST_CASE("inner product matches closed-form moments") {
  const GridPtr g = QuadratureGrid::gauss_legendre(64, 8);
  for (int i = -3; i <= 3; ++i) {
    for (int j = -3; j <= 3; ++j) {
      const auto ui = GridFunction::sample(g, [i](double x) { return std::pow(2.0, x) * std::polar(1.0, oracle::kTwoPi * i * x); });
      const auto uj = GridFunction::sample(g, [j](double x) { return std::pow(2.0, x) * std::polar(1.0, oracle::kTwoPi * j * x); });
      CHECK(std::abs(inner_product(ui, uj) - oracle::h_exponential_u_gram(2.0, i, j)) < 1e-12);
    }
  }
}

TEST_CASE("inner product is sesquilinear and hermitian") {
  const GridPtr g = QuadratureGrid::gauss_legendre(16, 6);
  const auto f = GridFunction::sample(g, [](double x) { return Complex(std::cos(3 * x), x * x); });
  const auto h = GridFunction::sample(g, [](double x) { return Complex(std::exp(x), -x); });
  const Complex a(0.7, -2.0);
  CHECK(std::abs(inner_product(a * f, h) - a * inner_product(f, h)) < 1e-13);
  CHECK(std::abs(inner_product(f, a * h) - std::conj(a) * inner_product(f, h)) < 1e-13);
  CHECK(std::abs(inner_product(f, h) - std::conj(inner_product(h, f))) < 1e-14);
  CHECK(inner_product(f, f).real() > 0.0);
  CHECK(std::abs(inner_product(f, f).imag()) < 1e-15);
}

TEST_CASE("norms") {
  const GridPtr g = QuadratureGrid::gauss_legendre(64, 8);
  const auto one = GridFunction::sample(g, [](double) { return Complex(1.0); });
  CHECK(h_norm(one) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lp_norm(one, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lp_norm(one, kInfinity) == 1.0);
  const auto x = GridFunction::sample(g, [](double t) { return Complex(t); });
  CHECK(lp_norm(x, 2.0) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
  CHECK(lp_norm(x, 3.0) == doctest::Approx(std::pow(0.25, 1.0 / 3.0)).epsilon(1e-12));
  // the discrete maximum sits at the last node, just below 1
  CHECK(lp_norm(x, kInfinity) < 1.0);
  CHECK(lp_norm(x, kInfinity) > 0.999);
  // H^p = max(L^2, L^p)
  CHECK(hp_norm(x, 1.0) == doctest::Approx(lp_norm(x, 2.0)));
  CHECK(hp_norm(x, kInfinity) == doctest::Approx(lp_norm(x, kInfinity)));
  CHECK_THROWS_AS(lp_norm(x, 0.5), ValidationError);
}

TEST_CASE("panel interpolant reproduces smooth functions between nodes") {
  const GridPtr g = QuadratureGrid::gauss_legendre(32, 8);
  const auto f = GridFunction::sample(g, [](double x) { return std::polar(1.0, oracle::kTwoPi * 3 * x); });
  const PointFunction p = panel_interpolant(f);
  for (double x : {0.0, 0.013, 0.25, 0.5, 0.77, 1.0}) {
    CHECK(std::abs(p(x) - std::polar(1.0, oracle::kTwoPi * 3 * x)) < 1e-9);
  }
  CHECK(std::abs(p(g->nodes()[5]) - f.values()[5]) < 1e-15);
}
