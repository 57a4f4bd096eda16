#include "scatterbound/violation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scatterbound/parallel.hpp"
#include "scatterbound/special_functions.hpp"

namespace scatterbound {

namespace {

constexpr double kPi = std::numbers::pi;

//! Quadrature of a point functional over the mesh volume (pairwise order).
template <typename Point>
double integrate(const RadialAngularMesh& mesh, const Point& point) {
  return integrate_mesh(mesh, point);
}

}  // namespace

MultiComponentField violation_field(const RadialPotential& p,
                                    const ScatteringAnsatz& a,
                                    const RadialAngularMesh& mesh) {
  if (mesh.r_max > a.r_grid() * (1.0 + 1e-12))
    throw std::domain_error(
        "violation_field: mesh extends beyond the ansatz bulk grid");
  const std::size_t nr = mesh.r.size();
  const std::size_t nu = mesh.u.size();
  MultiComponentField field;
  field.mesh = mesh;
  field.comp.assign(1, std::vector<cplx>(nr * nu, cplx{0.0, 0.0}));
  auto& out = field.comp[0];

  const double k2 = a.k * a.k;
  const double two_m = 2.0 * a.m;
  const int lmax = a.lmax;

  parallel_for(nr, [&](std::size_t ir_begin, std::size_t ir_end) {
    std::vector<cplx> radial(static_cast<std::size_t>(lmax) + 1);
    for (std::size_t ir = ir_begin; ir < ir_end; ++ir) {
      const double r = mesh.r[ir];
      const double v = evaluate(p, r);
      // Per-channel radial factors (angular dependence is P_l alone).
      for (int l = 0; l <= lmax; ++l) {
        const double cent = l * (l + 1) / (r * r);
        const auto b = a.bulk_eval(l, r);
        cplx rad = (b.d2y + (k2 - two_m * v - cent) * b.y) / (two_m * r);
        const cplx fl = a.f[static_cast<std::size_t>(l)];
        if (fl != cplx{0.0, 0.0}) {
          const WindowEval win = window_eval(r, a.w, l);
          const OutWave ow = out_radial_wave(l, a.k, a.eta, r);
          const cplx res = out_radial_residual(l, a.k, a.eta, r);
          rad += fl * ((win.d2w * ow.v + 2.0 * win.dw * ow.dv + win.w * res) /
                           (two_m * r) -
                       v * win.w * ow.v / r);
        }
        radial[static_cast<std::size_t>(l)] = rad;
      }
      for (std::size_t iu = 0; iu < nu; ++iu) {
        const double u = mesh.u[iu];
        cplx value{0.0, 0.0};
        if (a.incident) {
          double factor = -v;
          if (a.eta != 0.0)
            factor += a.alpha / r -
                      a.eta * a.eta / (a.m * r * r * (1.0 - u));
          value = factor * incident_wave(a, r, u);
        }
        const auto pl = legendre_table(lmax, u);
        for (int l = 0; l <= lmax; ++l)
          value += (2.0 * l + 1.0) * pl[static_cast<std::size_t>(l)] *
                   radial[static_cast<std::size_t>(l)];
        out[ir * nu + iu] = value;
      }
    }
  });
  return field;
}

double l1_norm(const MultiComponentField& f) {
  return integrate(f.mesh, [&](std::size_t i) {
    double s = 0.0;
    for (const auto& c : f.comp) s += std::abs(c[i]);
    return s;
  });
}

double l2sq_norm(const MultiComponentField& f) {
  return integrate(f.mesh, [&](std::size_t i) {
    double s = 0.0;
    for (const auto& c : f.comp) s += std::norm(c[i]);
    return s;
  });
}

std::pair<double, double> holder_pair(const MultiComponentField& f,
                                      const MultiComponentField& g) {
  if (f.comp.size() != g.comp.size() ||
      f.mesh.r.size() != g.mesh.r.size() ||
      f.mesh.u.size() != g.mesh.u.size())
    throw std::domain_error("holder_pair: fields live on different meshes");
  double sup_g = 0.0;
  for (const auto& c : g.comp)
    for (const auto& z : c) sup_g = std::max(sup_g, std::abs(z));
  if (sup_g > 1.0 + 1e-12)
    throw std::domain_error("holder_pair: |g| exceeds 1");
  const double lhs = l1_norm(f);
  const double dot_re = integrate(f.mesh, [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t c = 0; c < f.comp.size(); ++c)
      s += std::real(f.comp[c][i] * g.comp[c][i]);
    return s;
  });
  const double dot_im = integrate(f.mesh, [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t c = 0; c < f.comp.size(); ++c)
      s += std::imag(f.comp[c][i] * g.comp[c][i]);
    return s;
  });
  return {lhs, std::abs(cplx(dot_re, dot_im))};
}

double probability_flux(const ScatteringAnsatz& a, double r, double u) {
  const cplx psi = assemble(a, r, u);
  const cplx dpsi = assemble_dr(a, r, u);
  return std::imag(std::conj(psi) * dpsi) / a.m;
}

namespace {

//! Angular flux profile at radius rr on an n-node Gauss rule; returns
//! (inward, outward, net), each scaled by 2 pi rr^2.
struct FluxSplit {
  double in = 0.0, out = 0.0, net = 0.0;
};

FluxSplit flux_split(const ScatteringAnsatz& a, double rr, int n_nodes) {
  const GaussRule rule = gauss_legendre(n_nodes);
  std::vector<double> neg(rule.x.size()), pos(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double j = probability_flux(a, rr, rule.x[i]);
    neg[i] = rule.w[i] * std::min(j, 0.0);
    pos[i] = rule.w[i] * std::max(j, 0.0);
  }
  FluxSplit s;
  const double scale = 2.0 * kPi * rr * rr;
  s.in = scale * pairwise_sum(neg);
  s.out = scale * pairwise_sum(pos);
  s.net = s.in + s.out;
  return s;
}

}  // namespace

double flux_through_sphere(const ScatteringAnsatz& a, double rr) {
  if (rr <= 0.0)
    throw std::domain_error("flux_through_sphere requires rr > 0");
  return flux_split(a, rr, 64).net;
}

ViolationReport violation_report(const RadialPotential& p,
                                 const ScatteringAnsatz& a, int radial_panels,
                                 int panel_order, int angular_nodes) {
  if (tail_class(p) != TailClass::coulomb) {
    const BoundParams bp = bound_parameters(p, 1e-12);
    if (a.r_grid() < bp.r0)
      throw std::domain_error(
          "violation_report: ansatz grid does not cover the potential "
          "truncation radius");
  }
  const RadialAngularMesh coarse =
      make_mesh(a.r_grid(), radial_panels, panel_order, angular_nodes);
  const RadialAngularMesh fine = coarse.refined();

  const MultiComponentField fc = violation_field(p, a, coarse);
  const MultiComponentField ff = violation_field(p, a, fine);

  ViolationReport rep;
  rep.radial_panels = radial_panels;
  rep.panel_order = panel_order;
  rep.angular_nodes = angular_nodes;
  const double l1_c = l1_norm(fc), l1_f = l1_norm(ff);
  const double l2_c = l2sq_norm(fc), l2_f = l2sq_norm(ff);
  rep.l1 = l1_f;
  rep.l1_error = std::abs(l1_f - l1_c);
  rep.l2sq = l2_f;
  rep.l2sq_error = std::abs(l2_f - l2_c);

  const FluxSplit fs_c = flux_split(a, a.r_grid(), 64);
  const FluxSplit fs_f = flux_split(a, a.r_grid(), 128);
  rep.flux_in = fs_f.in;
  rep.flux_out = fs_f.out;
  rep.flux_net = fs_f.net;
  rep.flux_error = std::max({std::abs(fs_f.in - fs_c.in),
                             std::abs(fs_f.out - fs_c.out),
                             std::abs(fs_f.net - fs_c.net)});
  return rep;
}

}  // namespace scatterbound
