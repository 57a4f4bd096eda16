#include "scatterbound/wavefield.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scatterbound/oracles.hpp"
#include "scatterbound/special_functions.hpp"

namespace scatterbound {

namespace {

constexpr double kPi = std::numbers::pi;

//! i^{n} without trig round-off.
cplx unit_ipow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

int window_power(int l) { return 1 + (l + 1) / 2; }

}  // namespace

cplx incident_wave(const ScatteringAnsatz& a, double r, double u) {
  if (a.eta == 0.0) return std::exp(cplx(0.0, a.k * r * u));
  if (r <= 0.0) return {1.0, 0.0};
  const double one_minus = std::max(1.0 - u, 1e-300);
  const double s = a.k * r * u + a.eta * std::log(a.k * r * one_minus);
  return std::exp(cplx(0.0, s));
}

std::vector<double> geometric_grid(double r_max, int nodes, double stretch) {
  if (nodes < 4) throw std::domain_error("geometric_grid: need >= 4 nodes");
  if (r_max <= 0.0) throw std::domain_error("geometric_grid: r_max must be > 0");
  std::vector<double> r(static_cast<size_t>(nodes));
  const double den = std::expm1(stretch);
  for (int i = 0; i < nodes; ++i) {
    const double t = static_cast<double>(i) / (nodes - 1);
    r[static_cast<size_t>(i)] = r_max * std::expm1(stretch * t) / den;
  }
  r.front() = 0.0;
  r.back() = r_max;
  return r;
}

WindowEval window_eval(double r, double w_scale, int l) {
  const int p = window_power(l);
  const double z = r / w_scale;
  const double g = std::exp(-z * z);
  const double om = -std::expm1(-z * z);  // 1 - e^{-r^2/w^2}
  const double d_om = 2.0 * r / (w_scale * w_scale) * g;
  const double d2_om =
      (2.0 / (w_scale * w_scale) - 4.0 * r * r / std::pow(w_scale, 4)) * g;
  WindowEval e;
  if (p == 1) {
    e.w = om;
    e.dw = d_om;
    e.d2w = d2_om;
    return e;
  }
  const double om_pm2 = std::pow(om, p - 2);
  e.w = om_pm2 * om * om;
  e.dw = p * om_pm2 * om * d_om;
  e.d2w = p * (p - 1) * om_pm2 * d_om * d_om + p * om_pm2 * om * d2_om;
  return e;
}

OutWave out_radial_wave(int l, double k, double eta, double r) {
  if (r <= 0.0) throw std::domain_error("out_radial_wave requires r > 0");
  const double x = k * r;
  const cplx h = sph_hankel1(l, x);
  const cplx hp = sph_hankel1_deriv(l, x);
  const cplx pre = unit_ipow(l + 1);
  const cplx uh = pre * x * h;
  const cplx duh = pre * k * (h + x * hp);
  OutWave out;
  if (eta == 0.0) {
    out.v = uh;
    out.dv = duh;
    return out;
  }
  const cplx dress = std::exp(cplx(0.0, -eta * std::log(2.0 * x)));
  out.v = uh * dress;
  out.dv = (duh - cplx(0.0, eta) * uh / r) * dress;
  return out;
}

cplx out_radial_residual(int l, double k, double eta, double r) {
  if (eta == 0.0) return {0.0, 0.0};
  if (r <= 0.0) throw std::domain_error("out_radial_residual requires r > 0");
  const double x = k * r;
  const cplx h = sph_hankel1(l, x);
  const cplx hp = sph_hankel1_deriv(l, x);
  const cplx pre = unit_ipow(l + 1);
  const cplx uh = pre * x * h;
  const cplx duh = pre * k * (h + x * hp);
  const cplx dress = std::exp(cplx(0.0, -eta * std::log(2.0 * x)));
  const cplx i_eta(0.0, eta);
  return dress *
         (-2.0 * i_eta * duh / r + (i_eta - eta * eta) * uh / (r * r));
}

double coulomb_radial_phase(int l, double k, double eta, double r) {
  if (eta == 0.0) return k * r - 0.5 * kPi * l;
  return k * r - eta * std::log(2.0 * k * r) - 0.5 * kPi * l +
         coulomb_sigma(l, eta);
}

ScatteringAnsatz ScatteringAnsatz::make(double k, double m, int lmax,
                                        std::vector<double> grid, double w,
                                        double alpha) {
  if (k <= 0.0 || m <= 0.0)
    throw std::domain_error("ScatteringAnsatz: k and m must be > 0");
  if (lmax < 0) throw std::domain_error("ScatteringAnsatz: lmax must be >= 0");
  if (w <= 0.0) throw std::domain_error("ScatteringAnsatz: w must be > 0");
  if (grid.size() < 4 || grid.front() != 0.0)
    throw std::domain_error("ScatteringAnsatz: grid must start at 0");
  for (size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1])
      throw std::domain_error("ScatteringAnsatz: grid must increase");

  ScatteringAnsatz a;
  a.k = k;
  a.m = m;
  a.e = k * k / (2.0 * m);
  a.lmax = lmax;
  a.w = w;
  a.alpha = alpha;
  a.eta = m * alpha / k;
  a.grid = std::move(grid);
  a.set_channels(
      std::vector<std::vector<cplx>>(
          static_cast<size_t>(lmax) + 1,
          std::vector<cplx>(a.grid.size(), cplx{0.0, 0.0})),
      std::vector<cplx>(static_cast<size_t>(lmax) + 1, cplx{0.0, 0.0}));
  return a;
}

void ScatteringAnsatz::set_channels(std::vector<std::vector<cplx>> u_new,
                                    std::vector<cplx> f_new) {
  const size_t n_ch = static_cast<size_t>(lmax) + 1;
  if (u_new.size() != n_ch || f_new.size() != n_ch)
    throw std::domain_error("set_channels: need lmax+1 channels");
  for (auto& ch : u_new) {
    if (ch.size() != grid.size())
      throw std::domain_error("set_channels: node count mismatch");
    ch.front() = cplx{0.0, 0.0};
    ch.back() = cplx{0.0, 0.0};
  }
  u = std::move(u_new);
  f = std::move(f_new);
  bulk.clear();
  bulk.reserve(n_ch);
  for (size_t l = 0; l < n_ch; ++l) bulk.emplace_back(grid, u[l]);
}

CubicSpline::Eval ScatteringAnsatz::bulk_eval(int l, double r) const {
  if (r >= r_grid()) return {cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}};
  return bulk[static_cast<size_t>(l)].all(r);
}

cplx assemble(const ScatteringAnsatz& a, double r, double u) {
  if (r < 0.0) throw std::domain_error("assemble requires r >= 0");
  const auto pl = legendre_table(a.lmax, u);
  cplx total = a.incident ? incident_wave(a, r, u) : cplx{0.0, 0.0};
  if (r < 1e-12) {
    // Limits: bulk u_l/r -> u_l'(0); out channels vanish at the origin.
    for (int l = 0; l <= a.lmax; ++l)
      total += (2.0 * l + 1.0) * pl[static_cast<size_t>(l)] *
               a.bulk_eval(l, 0.0).dy;
    return total;
  }
  for (int l = 0; l <= a.lmax; ++l) {
    const double c = (2.0 * l + 1.0) * pl[static_cast<size_t>(l)];
    cplx radial = a.bulk_eval(l, r).y / r;
    const cplx fl = a.f[static_cast<size_t>(l)];
    if (fl != cplx{0.0, 0.0}) {
      const WindowEval win = window_eval(r, a.w, l);
      radial += fl * win.w * out_radial_wave(l, a.k, a.eta, r).v / r;
    }
    total += c * radial;
  }
  return total;
}

cplx assemble_dr(const ScatteringAnsatz& a, double r, double u) {
  if (r <= 0.0) throw std::domain_error("assemble_dr requires r > 0");
  const auto pl = legendre_table(a.lmax, u);
  cplx total{0.0, 0.0};
  if (a.incident) {
    const cplx in = incident_wave(a, r, u);
    const double phase_dr =
        a.eta == 0.0 ? a.k * u : a.k * u + a.eta / r;
    total += cplx(0.0, phase_dr) * in;
  }
  for (int l = 0; l <= a.lmax; ++l) {
    const double c = (2.0 * l + 1.0) * pl[static_cast<size_t>(l)];
    const auto b = a.bulk_eval(l, r);
    cplx radial = b.dy / r - b.y / (r * r);
    const cplx fl = a.f[static_cast<size_t>(l)];
    if (fl != cplx{0.0, 0.0}) {
      const WindowEval win = window_eval(r, a.w, l);
      const OutWave ow = out_radial_wave(l, a.k, a.eta, r);
      radial += fl * ((win.dw * ow.v + win.w * ow.dv) / r -
                      win.w * ow.v / (r * r));
    }
    total += c * radial;
  }
  return total;
}

cplx extract_f(const AsymptoticForm& form, double cos_theta) {
  const int lmax = static_cast<int>(form.f.size()) - 1;
  if (lmax < 0) return {0.0, 0.0};
  const auto pl = legendre_table(lmax, cos_theta);
  cplx sum{0.0, 0.0};
  for (int l = 0; l <= lmax; ++l)
    sum += (2.0 * l + 1.0) * pl[static_cast<size_t>(l)] *
           form.f[static_cast<size_t>(l)];
  return sum;
}

double cross_section(const AsymptoticForm& form) {
  if (form.eta != 0.0)
    throw std::domain_error(
        "cross_section: total cross section diverges for Coulomb tails");
  double sum = 0.0;
  for (size_t l = 0; l < form.f.size(); ++l)
    sum += (2.0 * static_cast<double>(l) + 1.0) * std::norm(form.f[l]);
  return 4.0 * kPi * sum;
}

}  // namespace scatterbound
