#pragma once
#include <cstddef>
#include <vector>

namespace scatterbound {

//! Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

//! n-point Gauss-Legendre rule (Newton iteration on P_n, symmetric).
GaussRule gauss_legendre(int n);

//! Composite rule: `panels` equal panels on [a, b], `order` GL nodes per panel.
struct PanelRule {
  std::vector<double> x;
  std::vector<double> w;
};
PanelRule composite_gauss(double a, double b, int panels, int order);
//! Composite rule over explicit panel breakpoints (strictly increasing).
PanelRule composite_gauss(const std::vector<double>& breaks, int order);

//! Sums in a fixed pairwise (recursive halving) order, independent of how the
//! terms were produced. Keeps results bit-reproducible for any worker count.
double pairwise_sum(const double* v, std::size_t n);
double pairwise_sum(const std::vector<double>& v);

//! Tensor mesh for integrals  2*pi * int_0^R r^2 dr int_{-1}^{1} du  f(r, u).
//! Radial direction: composite Gauss-Legendre panels; angular: one GL rule in
//! u = cos(theta).
struct RadialAngularMesh {
  std::vector<double> r, wr;  // radial nodes / weights (weight excludes r^2)
  std::vector<double> u, wu;  // angular nodes / weights
  std::vector<double> breaks;  // radial panel breakpoints (empty = uniform)
  double r_max = 0.0;
  int radial_panels = 0, panel_order = 0, angular_nodes = 0;

  std::size_t size() const { return r.size() * u.size(); }
  //! Mesh with both directions refined 2x (the mandatory Richardson pass).
  RadialAngularMesh refined() const;
};

RadialAngularMesh make_mesh(double r_max, int radial_panels, int panel_order,
                            int angular_nodes);
//! Mesh whose radial panels follow explicit breakpoints, e.g. an ansatz grid,
//! so piecewise-smooth integrands are smooth within every panel.
RadialAngularMesh make_mesh(const std::vector<double>& breaks, int panel_order,
                            int angular_nodes);

//! 2*pi * sum_q wr_q r_q^2 wu_q * point(iq) with pairwise accumulation.
//! `point` receives the flattened index iq = ir * n_u + iu.
template <class F>
double integrate_mesh(const RadialAngularMesh& m, F&& point) {
  const std::size_t nu = m.u.size();
  std::vector<double> terms(m.size());
  for (std::size_t ir = 0; ir < m.r.size(); ++ir) {
    const double rw = m.wr[ir] * m.r[ir] * m.r[ir];
    for (std::size_t iu = 0; iu < nu; ++iu)
      terms[ir * nu + iu] = rw * m.wu[iu] * point(ir * nu + iu);
  }
  return 2.0 * 3.14159265358979323846 * pairwise_sum(terms);
}

}  // namespace scatterbound
