#include "scatterbound/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scatterbound/special_functions.hpp"

namespace scatterbound {

namespace {

constexpr double kPi = std::numbers::pi;

//! Wraps a phase (defined mod pi) into the principal window (-pi/2, pi/2].
double wrap_mod_pi(double d) {
  while (d > 0.5 * kPi) d -= kPi;
  while (d <= -0.5 * kPi) d += kPi;
  return d;
}

struct MatchLayout {
  double r_start = 0.0;
  double h = 0.0;
  int n1 = 0;  //!< first matching node index
  int n2 = 0;  //!< second matching node index
};

//! Grid layout: the truncation radius lands exactly on a node, matching nodes
//! sit one 1/k beyond it and a quarter wavelength apart.
MatchLayout plan_grid(const RadialPotential& p, int l, double k, double h) {
  if (tail_class(p) == TailClass::coulomb)
    throw std::domain_error("oracle requires a short-range potential");
  if (k <= 0.0) throw std::domain_error("oracle requires k > 0");
  if (h <= 0.0) throw std::domain_error("oracle requires h > 0");

  double r_trunc = bound_parameters(p, 1e-12).r0;
  if (r_trunc <= 0.0) r_trunc = 1.0 / k;

  MatchLayout g;
  g.r_start = std::max(1e-6, 2.0 * h * std::sqrt(l * (l + 1) / 6.0));
  const int n_in = std::max(8, static_cast<int>(
                                   std::ceil((r_trunc - g.r_start) / h)));
  g.h = (r_trunc - g.r_start) / n_in;
  const int beyond = std::max(1, static_cast<int>(std::lround(1.0 / (k * g.h))));
  const int quarter =
      std::max(1, static_cast<int>(std::lround(0.5 * kPi / (k * g.h))));
  g.n1 = n_in + beyond;
  g.n2 = g.n1 + quarter;
  return g;
}

//! One Numerov sweep on the layout at step h/divide; returns u at the two
//! matching nodes plus the full sample vector.
struct Sweep {
  std::vector<double> u;
  double u1 = 0.0, u2 = 0.0;
  double r1 = 0.0, r2 = 0.0;
  double h = 0.0;
};

//! Node sampler for the march: the grid is laid out so any jump radius of the
//! potential lands exactly on a node, and the scheme must see the mean of the
//! one-sided limits there — a one-sided sample costs a full order of accuracy
//! (the march would converge like O(h) instead of O(h^2)).
double potential_at_node(const RadialPotential& p, double r, double tol) {
  if (p.kind == PotentialKind::square_well &&
      std::abs(r - p.radius) <= tol)
    return -0.5 * p.depth;
  return evaluate(p, r);
}

Sweep run_sweep(const RadialPotential& p, int l, double k, double M,
                const MatchLayout& g, int divide) {
  const double e = k * k / (2.0 * M);
  const double h = g.h / divide;
  const int n = g.n2 * divide;
  auto q = [&](double r) {
    return 2.0 * M * (potential_at_node(p, r, 0.25 * h) - e) +
           l * (l + 1) / (r * r);
  };
  // Series seeds u = r^{l+1} (1 + c2 r^2) with c2 fixed by the local equation.
  const double c2 =
      2.0 * M * (evaluate(p, g.r_start) - e) / (4.0 * l + 6.0);
  auto seed = [&](double r) {
    return std::pow(r, l + 1) * (1.0 + c2 * r * r);
  };
  Sweep s;
  s.h = h;
  s.u = numerov_integrate(q, g.r_start, h, n, seed(g.r_start),
                          seed(g.r_start + h));
  s.u1 = s.u[static_cast<size_t>(g.n1) * divide];
  s.u2 = s.u[static_cast<size_t>(g.n2) * divide];
  s.r1 = g.r_start + g.n1 * g.h;
  s.r2 = g.r_start + g.n2 * g.h;
  return s;
}

double match_delta(const Sweep& s, int l, double k) {
  const double g1 = s.u1 / s.r1;
  const double g2 = s.u2 / s.r2;
  const double j1 = sph_bessel_j(l, k * s.r1);
  const double j2 = sph_bessel_j(l, k * s.r2);
  const double y1 = sph_bessel_y(l, k * s.r1);
  const double y2 = sph_bessel_y(l, k * s.r2);
  return wrap_mod_pi(std::atan2(g1 * j2 - g2 * j1, g1 * y2 - g2 * y1));
}

}  // namespace

std::vector<double> numerov_integrate(const std::function<double(double)>& q,
                                      double r0, double h, int n,
                                      double u_first, double u_second) {
  if (n < 2) throw std::domain_error("numerov_integrate: need n >= 2");
  std::vector<double> u(static_cast<size_t>(n) + 1);
  u[0] = u_first;
  u[1] = u_second;
  // Increment form w_i = u_i (1 - h^2 q_i / 12), w_{i+1} = 2 w_i - w_{i-1}
  // + h^2 q_i u_i.  Algebraically the classic update, but rounding acts on
  // the small increment instead of on the near-unity coefficients, whose
  // relative rounding would otherwise perturb q by O(eps/h^2) coherently.
  const double c = h * h / 12.0;
  const double hh = h * h;
  double w_prev = u[0] * (1.0 - c * q(r0));
  double q_cur = q(r0 + h);
  double w_cur = u[1] * (1.0 - c * q_cur);
  for (int i = 1; i < n; ++i) {
    const double w_next = 2.0 * w_cur - w_prev + hh * q_cur * u[i];
    const double q_next = q(r0 + (i + 1) * h);
    u[i + 1] = w_next / (1.0 - c * q_next);
    w_prev = w_cur;
    w_cur = w_next;
    q_cur = q_next;
  }
  return u;
}

PhaseShiftResult numerov_phase_shift(const RadialPotential& p, int l, double k,
                                     double M, double h) {
  const MatchLayout g = plan_grid(p, l, k, h);
  const Sweep coarse = run_sweep(p, l, k, M, g, 1);
  const Sweep fine = run_sweep(p, l, k, M, g, 2);
  const double d1 = match_delta(coarse, l, k);
  const double d2 = match_delta(fine, l, k);
  const double step_diff = wrap_mod_pi(d2 - d1);

  PhaseShiftResult r;
  r.delta = wrap_mod_pi(d2 + step_diff / 15.0);
  r.f_l = (std::exp(cplx(0.0, 2.0 * r.delta)) - 1.0) / cplx(0.0, 2.0 * k);
  r.matching_radius = fine.r1;
  r.step = fine.h;
  r.convergence = std::abs(step_diff);
  return r;
}

RadialSolution numerov_radial_solution(const RadialPotential& p, int l,
                                       double k, double M, double h) {
  const MatchLayout g = plan_grid(p, l, k, h);
  const Sweep coarse = run_sweep(p, l, k, M, g, 1);
  const Sweep fine = run_sweep(p, l, k, M, g, 2);
  const double d1 = match_delta(coarse, l, k);
  const double d2 = match_delta(fine, l, k);
  const double delta = wrap_mod_pi(d2 + wrap_mod_pi(d2 - d1) / 15.0);

  // Normalize on whichever matching node carries the larger sample.
  const bool use_first = std::abs(fine.u1) >= std::abs(fine.u2);
  const double rm = use_first ? fine.r1 : fine.r2;
  const double um = use_first ? fine.u1 : fine.u2;
  const double target = k * rm *
                        (std::cos(delta) * sph_bessel_j(l, k * rm) -
                         std::sin(delta) * sph_bessel_y(l, k * rm));
  const double scale = target / um;

  RadialSolution sol;
  sol.delta = delta;
  sol.k = k;
  sol.l = l;
  sol.r.resize(fine.u.size());
  sol.w.resize(fine.u.size());
  for (size_t i = 0; i < fine.u.size(); ++i) {
    sol.r[i] = g.r_start + static_cast<double>(i) * fine.h;
    sol.w[i] = scale * fine.u[i];
  }
  return sol;
}

double oracle_cross_section(const RadialPotential& p, double k, double M,
                            int lmax, double h) {
  double sum = 0.0;
  for (int l = 0; l <= lmax; ++l) {
    const double d = numerov_phase_shift(p, l, k, M, h).delta;
    const double s = std::sin(d);
    sum += (2.0 * l + 1.0) * s * s;
  }
  return 4.0 * kPi * sum / (k * k);
}

Transmission1D transmission_1d(const RadialPotential& ramp, double E, double M,
                               double h) {
  if (ramp.kind != PotentialKind::ramp_plateau)
    throw std::domain_error("transmission_1d expects a ramp-plateau profile");
  if (E <= 0.0) throw std::domain_error("transmission_1d requires E > 0");
  const double k = std::sqrt(2.0 * M * E);
  if (h <= 0.0) h = 0.005 / k;
  const double a = ramp.radius;
  const double pad = 2.0 * kPi / k;
  const double x_left = -a - pad;
  const double x_right = 2.0 * a + 10.0 * h;
  const int n = static_cast<int>(std::ceil((x_right - x_left) / h));
  const double dx = (x_right - x_left) / n;
  auto x_at = [&](int i) { return x_left + i * dx; };
  auto q = [&](double x) { return 2.0 * M * (ramp_plateau_1d(ramp, x) - E); };

  // March right-to-left with unit transmitted wave on the right.
  const double h2 = dx * dx / 12.0;
  cplx psi_next = std::exp(cplx(0.0, k * x_at(n)));
  cplx psi_cur = std::exp(cplx(0.0, k * x_at(n - 1)));
  double q_next = q(x_at(n));
  double q_cur = q(x_at(n - 1));
  const int i_b =
      std::max(1, static_cast<int>(std::lround(0.5 * kPi / (k * dx))));
  cplx psi_a{0.0, 0.0}, psi_b{0.0, 0.0};
  if (n - 1 == i_b) psi_b = psi_cur;
  double max_abs = std::max(std::abs(psi_next), std::abs(psi_cur));
  double max_plateau = 0.0;
  for (int i = n - 1; i >= 1; --i) {
    const double q_prev = q(x_at(i - 1));
    const cplx psi_prev = (2.0 * psi_cur * (1.0 + 5.0 * h2 * q_cur) -
                           psi_next * (1.0 - h2 * q_next)) /
                          (1.0 - h2 * q_prev);
    const double mag = std::abs(psi_prev);
    max_abs = std::max(max_abs, mag);
    const double x = x_at(i - 1);
    if (x >= 0.0 && x <= a) max_plateau = std::max(max_plateau, mag);
    if (i - 1 == i_b) psi_b = psi_prev;
    if (i - 1 == 0) psi_a = psi_prev;
    psi_next = psi_cur;
    psi_cur = psi_prev;
    q_next = q_cur;
    q_cur = q_prev;
  }

  // Two-point free-wave fit at x_a and x_b = x_a + i_b dx.
  const double xa = x_at(0), xb = x_at(i_b);
  const cplx ep_a = std::exp(cplx(0.0, k * xa));
  const cplx ep_b = std::exp(cplx(0.0, k * xb));
  const cplx det = ep_a / ep_b - ep_b / ep_a;
  Transmission1D res;
  res.c_in = (psi_a / ep_b - psi_b / ep_a) / det;
  res.c_out = (ep_a * psi_b - ep_b * psi_a) / det;
  res.t = 1.0 / res.c_in;
  const double norm = std::abs(res.c_in);
  res.max_abs = max_abs / norm;
  res.max_abs_plateau = max_plateau / norm;
  return res;
}

std::pair<cplx, cplx> delta_1d_transmission(double alpha, double k, double M) {
  if (k <= 0.0) throw std::domain_error("delta_1d_transmission requires k > 0");
  const cplx t = 1.0 / cplx(1.0, M * alpha / k);
  return {t, t - 1.0};
}

double coulomb_sigma(int l, double eta) {
  if (l < 0) throw std::domain_error("coulomb_sigma requires l >= 0");
  if (eta == 0.0) return 0.0;
  return std::imag(log_gamma(cplx(static_cast<double>(l) + 1.0, eta)));
}

double free_partial_wave(int l, double k, double r) {
  return sph_bessel_j(l, k * r);
}

}  // namespace scatterbound
