#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "scatterbound/quadrature.hpp"
#include "scatterbound/rng.hpp"

using namespace scatterbound;

namespace {
constexpr double kPi = 3.14159265358979323846;

double poly_moment(int p) {  // int_{-1}^{1} x^p dx
  return p % 2 == 1 ? 0.0 : 2.0 / (p + 1);
}
}  // namespace

TEST_CASE("gauss_legendre weights sum to the interval length") {
  for (int n = 1; n <= 12; ++n) {
    GaussRule g = gauss_legendre(n);
    REQUIRE(g.x.size() == static_cast<std::size_t>(n));
    double s = 0.0;
    for (double w : g.w) s += w;
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("gauss_legendre integrates polynomials up to degree 2n-1 exactly") {
  for (int n = 1; n <= 8; ++n) {
    GaussRule g = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.w[i] * std::pow(g.x[i], p);
      CHECK(std::abs(s - poly_moment(p)) < 1e-13);
    }
  }
}

TEST_CASE("gauss_legendre nodes are symmetric and inside (-1,1)") {
  GaussRule g = gauss_legendre(9);
  for (int i = 0; i < 9; ++i) {
    CHECK(std::abs(g.x[i]) < 1.0);
    CHECK(g.x[i] == doctest::Approx(-g.x[8 - i]).epsilon(1e-14));
  }
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("composite_gauss integrates sin over [0, pi]") {
  PanelRule r = composite_gauss(0.0, kPi, 8, 4);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::sin(r.x[i]);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("composite_gauss with explicit breakpoints matches the uniform rule") {
  std::vector<double> breaks;
  for (int i = 0; i <= 8; ++i) breaks.push_back(i / 8.0 * kPi);
  PanelRule a = composite_gauss(0.0, kPi, 8, 4);
  PanelRule b = composite_gauss(breaks, 4);
  REQUIRE(a.x.size() == b.x.size());
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    CHECK(a.x[i] == doctest::Approx(b.x[i]).epsilon(1e-14));
    CHECK(a.w[i] == doctest::Approx(b.w[i]).epsilon(1e-14));
  }
}

TEST_CASE("breakpoint composite rule is exact per panel for piecewise cubics") {
  // Integrand with a kink at 0.3: smooth inside each panel, so a panel rule
  // with a breakpoint exactly at the kink integrates it exactly.
  std::vector<double> breaks = {0.0, 0.3, 1.0};
  PanelRule r = composite_gauss(breaks, 3);
  auto f = [](double x) { return x < 0.3 ? x * x * x : 1.0 + x * x; };
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(r.x[i]);
  const double exact = 0.3 * 0.3 * 0.3 * 0.3 / 4.0        // x^3 on [0, 0.3]
                       + 0.7 + (1.0 - 0.3 * 0.3 * 0.3) / 3.0;  // 1+x^2 rest
  CHECK(s == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("breakpoint composite rule validates its input") {
  CHECK_THROWS_AS(composite_gauss({1.0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(composite_gauss({0.0, 0.5, 0.5, 1.0}, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(composite_gauss({0.0, 1.0}, 0), std::invalid_argument);
}

TEST_CASE("pairwise_sum agrees with sequential accumulation") {
  Rng rng(42);
  std::vector<double> v(1000);
  long double ref = 0.0L;
  for (double& x : v) {
    x = rng.uniform(-1.0, 1.0);
    ref += static_cast<long double>(x);
  }
  CHECK(pairwise_sum(v) ==
        doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
  CHECK(pairwise_sum(nullptr, 0) == 0.0);
  CHECK(pairwise_sum(v.data(), 1) == v[0]);
}

TEST_CASE("mesh integral of 1 over the unit ball is its volume") {
  RadialAngularMesh m = make_mesh(1.0, 8, 4, 8);
  double vol = integrate_mesh(m, [](std::size_t) { return 1.0; });
  CHECK(vol == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-13));
}

TEST_CASE("mesh integrates a separable smooth field exactly enough") {
  // f(r, u) = r^2 u^2 integrates to 2 pi (1/5)(2/3) over the unit ball.
  RadialAngularMesh m = make_mesh(1.0, 4, 4, 4);
  const std::size_t nu = m.u.size();
  double s = integrate_mesh(m, [&](std::size_t iq) {
    const double r = m.r[iq / nu], u = m.u[iq % nu];
    return r * r * u * u;
  });
  CHECK(s == doctest::Approx(4.0 * kPi / 15.0).epsilon(1e-13));
}

TEST_CASE("refined meshes double both directions") {
  RadialAngularMesh m = make_mesh(2.0, 8, 4, 8);
  RadialAngularMesh f = m.refined();
  CHECK(f.radial_panels == 16);
  CHECK(f.angular_nodes == 16);
  CHECK(f.r_max == doctest::Approx(2.0));
}

TEST_CASE("breakpoint meshes refine by splitting every panel at its midpoint") {
  std::vector<double> breaks = {0.0, 0.25, 1.0, 3.0};
  RadialAngularMesh m = make_mesh(breaks, 4, 8);
  CHECK(m.radial_panels == 3);
  CHECK(m.r_max == doctest::Approx(3.0));
  RadialAngularMesh f = m.refined();
  REQUIRE(f.breaks.size() == 7);
  CHECK(f.breaks[1] == doctest::Approx(0.125));
  CHECK(f.breaks[3] == doctest::Approx(0.625));
  CHECK(f.breaks[5] == doctest::Approx(2.0));
  CHECK(f.angular_nodes == 16);
  // Refinement preserves the integral of a smooth field.
  const std::size_t nu = m.u.size(), nuf = f.u.size();
  double a = integrate_mesh(
      m, [&](std::size_t iq) { return std::exp(-m.r[iq / nu]); });
  double b = integrate_mesh(
      f, [&](std::size_t iq) { return std::exp(-f.r[iq / nuf]); });
  CHECK(a == doctest::Approx(b).epsilon(1e-5));
}
