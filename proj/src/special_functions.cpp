#include "scatterbound/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace scatterbound {

std::vector<double> legendre_table(int lmax, double u) {
  if (lmax < 0) throw std::invalid_argument("legendre_table: lmax must be >= 0");
  std::vector<double> p(lmax + 1);
  p[0] = 1.0;
  if (lmax >= 1) p[1] = u;
  for (int l = 1; l < lmax; ++l)
    p[l + 1] = ((2.0 * l + 1.0) * u * p[l] - l * p[l - 1]) / (l + 1.0);
  return p;
}

double legendre_p(int l, double u) { return legendre_table(l, u)[l]; }

namespace {

// Power series around x = 0: j_l = x^l/(2l+1)!! * sum_k (-x^2/2)^k / (k! prod).
double sph_j_series(int l, double x) {
  double lead = 1.0;
  for (int n = 1; n <= l; ++n) lead *= x / (2.0 * n + 1.0);
  // lead = x^l / (2l+1)!!
  double sum = 1.0, term = 1.0;
  const double x2 = x * x;
  for (int k = 1; k < 60; ++k) {
    term *= -0.5 * x2 / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return lead * sum;
}

}  // namespace

double sph_bessel_j(int l, double x) {
  if (l < 0) throw std::invalid_argument("sph_bessel_j: l must be >= 0");
  if (x < 0.0) throw std::domain_error("sph_bessel_j: x must be >= 0");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  if (x < 0.5) return sph_j_series(l, x);
  if (l == 0) return std::sin(x) / x;

  // Miller's downward recurrence, normalized against j_0 (or j_1 near a
  // zero of sin).
  const int start = l + 20 + static_cast<int>(x);
  double jp = 0.0, jc = 1e-30, stored = 0.0;
  for (int n = start; n >= 0; --n) {
    const double jm = (2.0 * n + 3.0) / x * jc - jp;
    jp = jc;
    jc = jm;
    if (n == l) stored = jc;
    if (std::abs(jc) > 1e250) {
      jc *= 1e-250;
      jp *= 1e-250;
      stored *= 1e-250;
    }
  }
  // jc = unnormalized j_0, jp = unnormalized j_1
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  if (std::abs(jc) >= std::abs(jp)) return stored * (j0 / jc);
  return stored * (j1 / jp);
}

double sph_bessel_y(int l, double x) {
  if (l < 0) throw std::invalid_argument("sph_bessel_y: l must be >= 0");
  if (x <= 0.0) throw std::domain_error("sph_bessel_y: x must be > 0");
  double ym = -std::cos(x) / x;
  if (l == 0) return ym;
  double yc = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int n = 1; n < l; ++n) {
    const double yn = (2.0 * n + 1.0) / x * yc - ym;
    ym = yc;
    yc = yn;
  }
  return yc;
}

cplx sph_hankel1(int l, double x) {
  return {sph_bessel_j(l, x), sph_bessel_y(l, x)};
}

cplx sph_hankel1_deriv(int l, double x) {
  // f'_l = (l/x) f_l - f_{l+1}, shared by j, y, h.
  return (static_cast<double>(l) / x) * sph_hankel1(l, x) - sph_hankel1(l + 1, x);
}

cplx log_gamma(cplx z) {
  if (z.real() <= 0.0)
    throw std::domain_error("log_gamma: requires Re z > 0");
  // Lanczos, g = 7, 9 coefficients.
  static const double c[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // Reflection keeps the remaining cases (0 < Re z < 0.5) accurate.
    const cplx pi(M_PI, 0.0);
    return std::log(pi / std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  const cplx zm = z - 1.0;
  cplx a(c[0], 0.0);
  for (int i = 1; i < 9; ++i) a += c[i] / (zm + static_cast<double>(i));
  const cplx t = zm + 7.5;
  return 0.5 * std::log(2.0 * M_PI) + (zm + 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace scatterbound
