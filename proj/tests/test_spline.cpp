#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "scatterbound/spline.hpp"

using namespace scatterbound;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
  return x;
}

}  // namespace

TEST_CASE("cubic spline reproduces cubics exactly (not-a-knot)") {
  std::vector<double> x = linspace(0.0, 2.0, 9);
  std::vector<cplx> y(x.size());
  auto f = [](double t) { return cplx(t * t * t - 2 * t + 1, 0.5 * t * t); };
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  CubicSpline s(x, y);
  for (double t : {0.05, 0.61, 1.0, 1.37, 1.95}) {
    CHECK(std::abs(s.value(t) - f(t)) < 1e-13);
    cplx d = s.deriv(t);
    CHECK(std::abs(d - cplx(3 * t * t - 2, t)) < 1e-12);
    cplx dd = s.second(t);
    CHECK(std::abs(dd - cplx(6 * t, 1.0)) < 1e-11);
  }
}

TEST_CASE("cubic spline interpolates the given samples") {
  std::vector<double> x = {0.0, 0.3, 0.9, 1.0, 2.5};
  std::vector<cplx> y = {{0, 0}, {1, -1}, {0.2, 0.4}, {-2, 0}, {0, 3}};
  CubicSpline s(x, y);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(std::abs(s.value(x[i]) - y[i]) < 1e-13);
}

TEST_CASE("cubic spline converges at fourth order on smooth data") {
  auto err = [](int n) {
    std::vector<double> x = linspace(0.0, 3.14159265358979, n);
    std::vector<cplx> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::sin(x[i]);
    CubicSpline s(x, y);
    double e = 0.0;
    for (int j = 0; j < 500; ++j) {
      const double t = 3.14159265358979 * (j + 0.5) / 500.0;
      e = std::max(e, std::abs(s.value(t) - std::sin(t)));
    }
    return e;
  };
  const double e1 = err(17), e2 = err(33);
  CHECK(e1 / e2 > 12.0);  // ~2^4 with not-a-knot end effects
  CHECK(e2 < 1e-5);
}

TEST_CASE("spline Eval bundles value and derivatives consistently") {
  std::vector<double> x = linspace(0.0, 1.0, 21);
  std::vector<cplx> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] = std::exp(cplx(0.0, 2.0 * x[i]));
  CubicSpline s(x, y);
  CubicSpline::Eval e = s.all(0.4321);
  CHECK(std::abs(e.y - s.value(0.4321)) == 0.0);
  CHECK(std::abs(e.dy - s.deriv(0.4321)) == 0.0);
  CHECK(std::abs(e.d2y - s.second(0.4321)) == 0.0);
  // Against the analytic derivative of e^{2ix}.
  CHECK(std::abs(e.dy - cplx(0.0, 2.0) * e.y) < 3e-5);
}

TEST_CASE("spline second-derivative error is O(h^2) on smooth data") {
  auto err2 = [](int n) {
    std::vector<double> x = linspace(0.0, 1.0, n);
    std::vector<cplx> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::cos(3.0 * x[i]);
    CubicSpline s(x, y);
    double e = 0.0;
    for (int j = 0; j < 300; ++j) {
      const double t = 0.1 + 0.8 * j / 299.0;
      e = std::max(e, std::abs(s.second(t) + 9.0 * std::cos(3.0 * t)));
    }
    return e;
  };
  CHECK(err2(21) / err2(41) > 3.0);  // ~2^2
}
