#include <doctest.h>

#include <cmath>

#include "biortho/errors.hpp"
#include "biortho/systems.hpp"
#include "oracles.hpp"

using namespace biortho;

namespace {
GridPtr grid() { return QuadratureGrid::gauss_legendre(64, 8); }
}  // namespace

TEST_CASE("index sets") {
  const IndexSet b = IndexSet::balanced(2);
  CHECK(std::vector<int>(b.indices().begin(), b.indices().end()) == std::vector<int>{0, 1, -1, 2, -2});
  CHECK(b.position(-2) == 4u);
  CHECK_FALSE(b.position(3).has_value());
  const IndexSet n = IndexSet::natural(0, 4);
  CHECK(n.size() == 5);
  CHECK(n.position(3) == 3u);
  CHECK_FALSE(b == n);
  CHECK(b == IndexSet::balanced(2));
  CHECK_THROWS_AS(IndexSet::natural(3, 1), ValidationError);
}

TEST_CASE("h-exponential members follow the closed form") {
  const auto sys = make_h_exponential(2.0, 3, grid());
  CHECK(sys.size() == 7);
  const auto nodes = sys.grid()->nodes();
  for (std::size_t pos = 0; pos < sys.size(); ++pos) {
    const int j = sys.index_set()[pos];
    for (std::size_t i = 0; i < nodes.size(); i += 37) {
      const double x = nodes[i];
      const Complex e = std::polar(1.0, oracle::kTwoPi * j * x);
      CHECK(std::abs(sys.u(pos).values()[i] - std::pow(2.0, x) * e) < 1e-13);
      CHECK(std::abs(sys.v(pos).values()[i] - std::pow(2.0, -x) * e) < 1e-13);
    }
  }
  CHECK_THROWS_AS(make_h_exponential(0.0, 3, grid()), ValidationError);
  CHECK_THROWS_AS(make_h_exponential(-1.0, 3, grid()), ValidationError);
}

TEST_CASE("biorthogonality of the h-exponential system") {
  for (double h : {0.5, 1.0, 2.0, 5.0}) {
    CAPTURE(h);
    const auto rep = verify_biorthogonality(make_h_exponential(h, 16, grid()));
    CHECK(rep.max_residual < 1e-10);
    CHECK(rep.pass);
  }
}

TEST_CASE("ionkin Gram matrix matches the closed-form oracle") {
  const auto sys = make_ionkin(8, grid());
  CHECK(sys.size() == 17);
  double worst = 0.0;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = 0; j < sys.size(); ++j) {
      const Complex exact = oracle::exact_inner(oracle::ionkin_u(sys.index_set()[i]),
                                                oracle::ionkin_v(sys.index_set()[j]));
      CHECK(std::abs(exact - (i == j ? 1.0 : 0.0)) < 1e-14);
      worst = std::max(worst, std::abs(inner_product(sys.u(i), sys.v(j)) - exact));
    }
  }
  CHECK(worst < 1e-9);
  CHECK(verify_biorthogonality(sys).pass);
}

TEST_CASE("a non-biorthogonal family is reported, not accepted") {
  const GridPtr g = grid();
  const IndexSet set = IndexSet::natural(0, 1);
  std::vector<GridFunction> u{GridFunction::sample(g, [](double) { return Complex(1.0); }),
                              GridFunction::sample(g, [](double x) { return Complex(x); })};
  std::vector<GridFunction> v = u;
  const BiorthogonalSystem sys("custom", {SystemKind::custom, 1.0, 1}, g, set, u, v);
  const auto rep = verify_biorthogonality(sys);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_offdiagonal == doctest::Approx(0.5));
}

TEST_CASE("zero members are rejected") {
  const GridPtr g = grid();
  std::vector<GridFunction> u{GridFunction::zero(g)};
  std::vector<GridFunction> v{GridFunction::sample(g, [](double) { return Complex(1.0); })};
  CHECK_THROWS_AS(BiorthogonalSystem("bad", {SystemKind::custom, 1.0, 0}, g, IndexSet::natural(0, 0), u, v),
                  ValidationError);
}

TEST_CASE("frame bounds") {
  SUBCASE("orthonormal at h = 1") {
    const FrameBounds fb = estimate_frame_bounds(make_h_exponential(1.0, 8, grid()), 50, 7);
    for (double b : {fb.a_sq, fb.A_sq, fb.b_sq, fb.B_sq}) CHECK(std::abs(b - 1.0) < 1e-10);
  }
  SUBCASE("h = 2 sits inside the multiplier range") {
    const FrameBounds fb = estimate_frame_bounds(make_h_exponential(2.0, 8, grid()), 100, 7);
    CHECK(fb.a_sq >= 0.25 - 1e-6);
    CHECK(fb.A_sq <= 1.0 + 1e-6);
    CHECK(fb.a_sq <= fb.A_sq);
    CHECK(fb.b_sq <= fb.B_sq);
  }
  SUBCASE("deterministic for a fixed seed") {
    const auto sys = make_ionkin(4, grid());
    const FrameBounds a = estimate_frame_bounds(sys, 20, 11);
    const FrameBounds b = estimate_frame_bounds(sys, 20, 11);
    CHECK(a.a_sq == b.a_sq);
    CHECK(a.B_sq == b.B_sq);
  }
}
