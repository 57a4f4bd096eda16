#pragma once

//! Stability constants: turning an L1 residual norm into certified error
//! bounds on phase-shift amplitudes, cross sections, and pointwise
//! amplitudes, plus the xi / gamma* envelope estimators the constants need.

#include <string>

#include "scatterbound/potentials.hpp"

namespace scatterbound {

enum class XiRigor { rigorous_formula, numerically_estimated };

//! |f_tilde_l - f_l| <= M xi_inf L1 / (2 pi (2l+1)).
double phase_shift_error_bound(double m, int l, double xi_inf, double l1);

//! Certified interval for the true cross section around sigma_tilde:
//! half-width C = M Xi L1 / (2 sqrt(pi)) acts on sqrt(sigma).
struct CrossSectionInterval {
  double lo = 0.0;
  double hi = 0.0;
  double half_width = 0.0;  //!< C, the bound on |sqrt(sigma)-sqrt(sigma~)|
};
CrossSectionInterval cross_section_interval(double m, double xi_full,
                                            double l1, double sigma_tilde);

//! |f_tilde(n) - f(n)| <= M psi_inf L1 / pi at every direction n.
double pointwise_f_bound(double m, double psi_inf, double l1);

//! V = 0 special case: any claimed outgoing amplitude obeys
//! |f_tilde| <= M L1 / pi.
double free_scattering_bound(double m, double l1);

//! Closed-form 1D transfer envelope sqrt(1+k^2) e^{L max(2M(V0+E), 1)} for a
//! compact potential of sup bound V0 and support length L.
double xi_linf_transfer_1d(double v0, double e, double m, double l_support,
                           double k);

//! gamma* = max_r 2M \int |V(r')| r'^2 / max(r, r') dr' (volume integral of
//! the free resolvent kernel magnitude).  Throws for Coulomb tails.
double gamma_star(const RadialPotential& p, double k, double m);

//! Geometric-series amplitude bound 1/(1 - gamma*); throws when gamma* >= 1.
double amplitude_bound_from_gamma(double gamma);

//! Numerically estimated sup of a normalized solution profile; value carries
//! a 1.05 sampling-safety factor on top of the raw observed maximum.
struct XiEstimate {
  double value = 0.0;
  double raw_max = 0.0;
  XiRigor rigor = XiRigor::numerically_estimated;
};

//! Sup of the single-channel profile |w_l(r)/(kr)| with unit exterior
//! amplitude; ramp-plateau potentials are probed in their native 1D
//! transmission geometry (unit incident wave) instead.
XiEstimate xi_linf_numerical(const RadialPotential& p, int l, double k,
                             double m);

//! Sup over (r, u) of the full partial-wave scattering state built from
//! oracle phases through lmax (incident normalization 1).
XiEstimate xi_linf_full_state(const RadialPotential& p, double k, double m,
                              int lmax);

}  // namespace scatterbound
