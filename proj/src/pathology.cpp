#include "scatterbound/pathology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scatterbound/oracles.hpp"
#include "scatterbound/potentials.hpp"
#include "scatterbound/quadrature.hpp"

namespace scatterbound {

namespace {

//! Composite quadrature of a real integrand over [a, b], resolved against
//! the oscillation wavenumber.
template <typename F>
double integrate_1d(double a, double b, double k, const F& f) {
  if (b <= a) return 0.0;
  const int panels = std::max(
      64, static_cast<int>(std::ceil((b - a) * std::max(k, 1e-3) / 1.5)));
  const PanelRule rule = composite_gauss(a, b, panels, 8);
  std::vector<double> vals(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i)
    vals[i] = rule.w[i] * f(rule.x[i]);
  return pairwise_sum(vals);
}

}  // namespace

std::vector<L2ScanRow> l2_instability_scan(cplx a_lt, cplx a_gt, double k,
                                           double m,
                                           const std::vector<double>& n_list) {
  if (k <= 0.0 || m <= 0.0)
    throw std::domain_error("l2_instability_scan: k and m must be > 0");
  const cplx da = a_gt - a_lt;
  std::vector<L2ScanRow> rows;
  rows.reserve(n_list.size());
  double n_prev = 0.0;
  for (double n : n_list) {
    if (n <= n_prev)
      throw std::domain_error(
          "l2_instability_scan: n_list must be strictly increasing");
    if (n * k < 10.0)
      throw std::domain_error("l2_instability_scan: need n >= 10/k");
    n_prev = n;
    L2ScanRow row;
    row.n = n;
    // Interior residual of A(x) e^{ikx} with linear A: (ik A'/M) e^{ikx}.
    const double resid_mag = k * std::abs(da) / (m * n);
    row.l2sq_interior =
        integrate_1d(0.0, n, k, [&](double) { return resid_mag * resid_mag; });
    row.l1_interior =
        integrate_1d(0.0, n, k, [&](double) { return resid_mag; });
    // Derivative jump |A'| = |da|/n at both ramp ends, each mass |jump|/2M.
    row.kink_mass = 2.0 * (std::abs(da) / n) / (2.0 * m);
    // Currents Im(psi* psi')/M evaluated from the state on either side.
    const double j_left = k * std::norm(a_lt) / m;
    const double j_right = k * std::norm(a_gt) / m;
    row.flux_jump = j_right - j_left;
    rows.push_back(row);
  }
  return rows;
}

TuningResult expectation_tuning(double a_lt, double a_gt, double k, double n,
                                double m) {
  if (k <= 0.0 || n <= 0.0 || m <= 0.0)
    throw std::domain_error("expectation_tuning: k, n, m must be > 0");
  const double da = a_gt - a_lt;

  // Interior expectation of A(x) sin(kx) with ramp completing at X = n/alpha:
  // (da / 2 m X) * F, F = a_lt sin^2(kX) + da [sin(2kX)/(4kX) - cos(2kX)/2].
  auto f_of = [&](double alpha) {
    const double x = n / alpha;
    return a_lt * std::sin(k * x) * std::sin(k * x) +
           da * (std::sin(2.0 * k * x) / (4.0 * k * x) -
                 0.5 * std::cos(2.0 * k * x));
  };

  TuningResult res;
  if (da == 0.0) {
    // Symmetric ramp: the expectation vanishes identically for every alpha.
    res.alpha = 1.0;
    res.residual = 0.0;
    res.expectation = 0.0;
    res.l1_interior = 0.0;
    res.component_flux_jump = 0.0;
    return res;
  }

  // Bracket the first sign change of F on an alpha scan near 1, then bisect.
  const double lo_limit = 0.1, hi_limit = 10.0;
  double lo = 0.0, hi = 0.0;
  double prev_alpha = lo_limit;
  double prev_f = f_of(prev_alpha);
  const int scan = 4000;
  for (int i = 1; i <= scan; ++i) {
    const double alpha =
        lo_limit + (hi_limit - lo_limit) * static_cast<double>(i) / scan;
    const double f = f_of(alpha);
    if (prev_f == 0.0) {
      lo = hi = prev_alpha;
      break;
    }
    if ((prev_f < 0.0) != (f < 0.0)) {
      lo = prev_alpha;
      hi = alpha;
      break;
    }
    prev_alpha = alpha;
    prev_f = f;
  }
  if (lo == 0.0 && hi == 0.0)
    throw std::domain_error("expectation_tuning: no root bracketed");
  double alpha = 0.5 * (lo + hi);
  if (lo != hi) {
    double f_lo = f_of(lo);
    for (int it = 0; it < 200; ++it) {
      alpha = 0.5 * (lo + hi);
      const double f_mid = f_of(alpha);
      if (f_mid == 0.0) break;
      if ((f_lo < 0.0) == (f_mid < 0.0)) {
        lo = alpha;
        f_lo = f_mid;
      } else {
        hi = alpha;
      }
      if (hi - lo < 1e-15 * alpha) break;
    }
  }

  const double x = n / alpha;
  res.alpha = alpha;
  res.residual = std::abs(f_of(alpha));
  res.expectation = da / (2.0 * m * x) * f_of(alpha);
  // Interior residual (k da / m X) cos(kx) on (0, X).
  res.l1_interior = integrate_1d(0.0, x, k, [&](double t) {
    return std::abs(k * da / (m * x) * std::cos(k * t));
  });
  // The family is real (zero true current); the defect that survives is the
  // rightward-component current mismatch of the mismatched amplitudes.
  res.component_flux_jump = k * (a_gt * a_gt - a_lt * a_lt) / (4.0 * m);
  return res;
}

NonconservationResult nonconservation_demo(double eps, double a, double k,
                                           double m) {
  if (k <= 0.0 || m <= 0.0)
    throw std::domain_error("nonconservation_demo: k and m must be > 0");
  NonconservationResult res;
  // Interior residual on (0,1): -(eps k / m) sin(kx).
  res.l1_interior = integrate_1d(0.0, 1.0, k, [&](double x) {
    return std::abs(eps * k / m * std::sin(k * x));
  });
  // Derivative jumps of the ramp piece eps x cos(kx):
  //   at 0: eps;   at 1: -eps cos(k).
  res.kink_mass_left = std::abs(eps) / (2.0 * m);
  res.kink_mass_right = std::abs(eps * std::cos(k)) / (2.0 * m);
  // Currents from the state expressions on either side.
  auto current = [&](double x, bool ramp_done) {
    const double t = ramp_done ? 1.0 : 0.0;
    const cplx psi = cplx(0.0, a) * std::sin(k * x) +
                     t * eps * std::cos(k * x);
    const cplx dpsi = cplx(0.0, a) * k * std::cos(k * x) -
                      t * eps * k * std::sin(k * x);
    return std::imag(std::conj(psi) * dpsi) / m;
  };
  res.current_left = current(-2.0, false);
  res.current_right = current(2.0, true);
  return res;
}

VslowResult vslow_demo(double a, double eps, double e, double m) {
  if (a <= 0.0 || eps <= 0.0 || e <= eps || m <= 0.0)
    throw std::domain_error("vslow_demo: need a > 0, 0 < eps < e, m > 0");
  VslowResult res;
  const double amp = std::pow(e / eps, 0.25);
  const double kappa = std::sqrt(2.0 * m * eps);
  if (a * kappa < 20.0)
    throw std::domain_error(
        "vslow_demo: semiclassical precondition unmet (a sqrt(2 m eps) < 20)");
  res.amp_predicted = amp;
  res.l1_predicted = std::sqrt(2.0 / m) * std::pow(e, 0.25) * std::pow(eps, 0.25);

  // Interior residual of the transition state g(x) e^{i kappa x},
  // g = amp (a - x)/a on the plateau: i kappa g'(x) e^{i kappa x} / m.
  res.l1_measured = integrate_1d(0.0, a, kappa, [&](double) {
    return kappa * amp / (a * m);
  });
  // Derivative jumps amp/a at both plateau ends, mass |jump|/2m each.
  res.kink_contribution = 2.0 * (amp / a) / (2.0 * m);

  // True plateau amplitude from the native 1D scattering solve with plateau
  // height e - eps.
  RadialPotential ramp = ramp_plateau(a, 1.0 - e + eps);
  const Transmission1D tr = transmission_1d(ramp, e, m);
  res.amp_measured = tr.max_abs_plateau;
  return res;
}

InverseSquareExponents inverse_square_exponents(double alpha2, double m) {
  if (m <= 0.0)
    throw std::domain_error("inverse_square_exponents: m must be > 0");
  InverseSquareExponents res;
  const double disc = 1.0 + 8.0 * m * alpha2;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    res.beta_minus = cplx(0.5 * (1.0 - root), 0.0);
    res.beta_plus = cplx(0.5 * (1.0 + root), 0.0);
    res.pathological = false;
  } else {
    const double root = std::sqrt(-disc);
    res.beta_minus = cplx(0.5, -0.5 * root);
    res.beta_plus = cplx(0.5, 0.5 * root);
    res.pathological = true;
  }
  return res;
}

}  // namespace scatterbound
