#pragma once

//! Pointwise residual (E - H) psi of a trial state, its quadrature norms with
//! mesh-refinement error bars, and probability-flux diagnostics.

#include <complex>
#include <utility>
#include <vector>

#include "scatterbound/potentials.hpp"
#include "scatterbound/quadrature.hpp"
#include "scatterbound/wavefield.hpp"

namespace scatterbound {

//! One or more complex component fields sampled on a shared (r, u) mesh,
//! stored in mesh point order (radial-major).
struct MultiComponentField {
  RadialAngularMesh mesh;
  std::vector<std::vector<cplx>> comp;

  std::size_t components() const { return comp.size(); }
};

//! Samples (E - H) applied to the trial state on the mesh (one component).
//! Throws if the mesh extends beyond the ansatz bulk grid.
MultiComponentField violation_field(const RadialPotential& p,
                                    const ScatteringAnsatz& a,
                                    const RadialAngularMesh& mesh);

//! integral of sum_i |f_i| over the mesh volume.
double l1_norm(const MultiComponentField& f);

//! integral of sum_i |f_i|^2 (squared norm, no square root).
double l2sq_norm(const MultiComponentField& f);

//! (integral sum_i |f_i|, |integral sum_i f_i g_i|); requires sup |g_i| <= 1
//! so the pair witnesses the Hoelder inequality second <= first.
std::pair<double, double> holder_pair(const MultiComponentField& f,
                                      const MultiComponentField& g);

//! Radial probability current Im(psi* d_r psi) / M at (r, u).
double probability_flux(const ScatteringAnsatz& a, double r, double u);

//! Net radial flux through the sphere of radius rr (positive outward).
double flux_through_sphere(const ScatteringAnsatz& a, double rr);

//! Norms plus inward/outward flux split at the grid radius, each with a
//! mesh-refinement error estimate.
struct ViolationReport {
  double l1 = 0.0, l1_error = 0.0;
  double l2sq = 0.0, l2sq_error = 0.0;
  double flux_in = 0.0, flux_out = 0.0, flux_net = 0.0, flux_error = 0.0;
  int radial_panels = 0, panel_order = 0, angular_nodes = 0;
};

ViolationReport violation_report(const RadialPotential& p,
                                 const ScatteringAnsatz& a,
                                 int radial_panels = 64, int panel_order = 4,
                                 int angular_nodes = 32);

}  // namespace scatterbound
