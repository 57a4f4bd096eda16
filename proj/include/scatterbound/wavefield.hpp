#pragma once

//! Trial scattering states: fixed incident wave, cubic-spline bulk channels
//! clamped to zero at both grid ends, and windowed outgoing channels carrying
//! the amplitudes f_l.

#include <complex>
#include <vector>

#include "scatterbound/spline.hpp"

namespace scatterbound {

//! Stretched radial grid on [0, r_max]: r_i = r_max (e^{s t_i}-1)/(e^s-1).
std::vector<double> geometric_grid(double r_max, int nodes,
                                   double stretch = 3.0);

//! Window W_l = omega^{p_l}, omega = 1 - e^{-r^2/w^2}, p_l = 1 + ceil(l/2):
//! vanishes fast enough at the origin to keep every out channel regular and
//! its violation integrable.
struct WindowEval {
  double w = 0.0, dw = 0.0, d2w = 0.0;
};
WindowEval window_eval(double r, double w_scale, int l);

//! Outgoing reduced wave v_l = i^{l+1} k r h1_l(kr), Coulomb-dressed by
//! e^{-i eta ln(2kr)} when eta != 0; v_0 = e^{ikr} exactly at eta = 0.
struct OutWave {
  cplx v{0.0, 0.0}, dv{0.0, 0.0};
};
OutWave out_radial_wave(int l, double k, double eta, double r);

//! (d^2/dr^2 + k^2 - l(l+1)/r^2) applied to the dressed wave; identically
//! zero at eta = 0.
cplx out_radial_residual(int l, double k, double eta, double r);

//! Radial phase of the exact asymptotic partial wave:
//! kr - eta ln(2kr) - l pi/2 + arg Gamma(l+1+i eta); reduces to kr - l pi/2
//! exactly at eta = 0.
double coulomb_radial_phase(int l, double k, double eta, double r);

//! Incident wave value: plane wave e^{ikru}, Coulomb-dressed when eta != 0.
struct ScatteringAnsatz;
cplx incident_wave(const ScatteringAnsatz& a, double r, double u);

struct ScatteringAnsatz {
  double k = 1.0;
  double m = 1.0;
  double e = 0.5;  //!< k^2 / (2m), stored redundantly, checked on load
  int lmax = 0;
  double w = 1.0;      //!< window length scale
  double alpha = 0.0;  //!< Coulomb coefficient; eta = m alpha / k
  double eta = 0.0;
  bool incident = true;  //!< testing hook: omit the incident wave
  std::vector<double> grid;
  std::vector<std::vector<cplx>> u;  //!< bulk node values per l (ends 0)
  std::vector<cplx> f;               //!< out amplitudes per l
  std::vector<CubicSpline> bulk;

  static ScatteringAnsatz make(double k, double m, int lmax,
                               std::vector<double> grid, double w,
                               double alpha = 0.0);

  //! Replaces channel data (endpoints are forced to zero) and rebuilds the
  //! splines.
  void set_channels(std::vector<std::vector<cplx>> u_new,
                    std::vector<cplx> f_new);

  double r_grid() const { return grid.back(); }

  //! Bulk spline value/derivatives; zero at and beyond r_grid().
  CubicSpline::Eval bulk_eval(int l, double r) const;
};

//! Total trial state at radius r and direction cosine u.
cplx assemble(const ScatteringAnsatz& a, double r, double u);

//! Radial derivative of the total trial state at fixed direction cosine.
cplx assemble_dr(const ScatteringAnsatz& a, double r, double u);

//! Finite partial-wave amplitude table f_l with optional Coulomb eta.
struct AsymptoticForm {
  std::vector<cplx> f;
  double eta = 0.0;
};

//! f(cos theta) = sum (2l+1) f_l P_l(cos theta) over the stored channels.
cplx extract_f(const AsymptoticForm& form, double cos_theta);

//! sigma = 4 pi sum (2l+1) |f_l|^2; throws for eta != 0 (Coulomb total cross
//! section diverges).
double cross_section(const AsymptoticForm& form);

}  // namespace scatterbound
