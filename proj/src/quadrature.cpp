#include "scatterbound/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace scatterbound {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussRule g;
  g.x.assign(n, 0.0);
  g.w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess for the i-th root of P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    g.x[i] = -z;
    g.x[n - 1 - i] = z;
    g.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    g.w[n - 1 - i] = g.w[i];
  }
  if (n % 2 == 1) g.x[n / 2] = 0.0;
  return g;
}

PanelRule composite_gauss(double a, double b, int panels, int order) {
  if (panels < 1 || order < 1)
    throw std::invalid_argument("composite_gauss: panels and order must be >= 1");
  const GaussRule g = gauss_legendre(order);
  PanelRule r;
  r.x.reserve(static_cast<std::size_t>(panels) * order);
  r.w.reserve(static_cast<std::size_t>(panels) * order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int k = 0; k < order; ++k) {
      r.x.push_back(lo + 0.5 * h * (g.x[k] + 1.0));
      r.w.push_back(0.5 * h * g.w[k]);
    }
  }
  return r;
}

PanelRule composite_gauss(const std::vector<double>& breaks, int order) {
  if (breaks.size() < 2)
    throw std::invalid_argument("composite_gauss: need >= 2 breakpoints");
  if (order < 1)
    throw std::invalid_argument("composite_gauss: order must be >= 1");
  const GaussRule g = gauss_legendre(order);
  PanelRule r;
  r.x.reserve((breaks.size() - 1) * order);
  r.w.reserve((breaks.size() - 1) * order);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p], h = breaks[p + 1] - breaks[p];
    if (h <= 0.0)
      throw std::invalid_argument(
          "composite_gauss: breakpoints must be strictly increasing");
    for (int k = 0; k < order; ++k) {
      r.x.push_back(lo + 0.5 * h * (g.x[k] + 1.0));
      r.w.push_back(0.5 * h * g.w[k]);
    }
  }
  return r;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

RadialAngularMesh make_mesh(double r_max, int radial_panels, int panel_order,
                            int angular_nodes) {
  if (r_max <= 0.0) throw std::invalid_argument("make_mesh: r_max must be > 0");
  RadialAngularMesh m;
  const PanelRule rad = composite_gauss(0.0, r_max, radial_panels, panel_order);
  m.r = rad.x;
  m.wr = rad.w;
  const GaussRule ang = gauss_legendre(angular_nodes);
  m.u = ang.x;
  m.wu = ang.w;
  m.r_max = r_max;
  m.radial_panels = radial_panels;
  m.panel_order = panel_order;
  m.angular_nodes = angular_nodes;
  return m;
}

RadialAngularMesh make_mesh(const std::vector<double>& breaks, int panel_order,
                            int angular_nodes) {
  RadialAngularMesh m;
  const PanelRule rad = composite_gauss(breaks, panel_order);
  m.r = rad.x;
  m.wr = rad.w;
  const GaussRule ang = gauss_legendre(angular_nodes);
  m.u = ang.x;
  m.wu = ang.w;
  m.breaks = breaks;
  m.r_max = breaks.back();
  m.radial_panels = static_cast<int>(breaks.size()) - 1;
  m.panel_order = panel_order;
  m.angular_nodes = angular_nodes;
  return m;
}

RadialAngularMesh RadialAngularMesh::refined() const {
  if (!breaks.empty()) {
    std::vector<double> half;
    half.reserve(2 * breaks.size());
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
      half.push_back(breaks[i]);
      half.push_back(0.5 * (breaks[i] + breaks[i + 1]));
    }
    half.push_back(breaks.back());
    return make_mesh(half, panel_order, 2 * angular_nodes);
  }
  return make_mesh(r_max, 2 * radial_panels, panel_order, 2 * angular_nodes);
}

}  // namespace scatterbound
