#pragma once

//! Reference solvers: Numerov partial-wave phase shifts with step-halving
//! error control, a native 1D transmission solver, the 1D delta-barrier
//! closed form, and Coulomb phase utilities.

#include <complex>
#include <functional>
#include <vector>

#include "scatterbound/potentials.hpp"

namespace scatterbound {

using cplx = std::complex<double>;

//! Fixed-step Numerov march for u'' = Q(r) u.  Returns n+1 samples
//! u(r0 + i h), i = 0..n, seeded with the two leading values.
std::vector<double> numerov_integrate(const std::function<double(double)>& q,
                                      double r0, double h, int n,
                                      double u_first, double u_second);

struct PhaseShiftResult {
  double delta = 0.0;        //!< principal value in (-pi/2, pi/2]
  cplx f_l{0.0, 0.0};        //!< (e^{2i delta} - 1) / (2 i k)
  double matching_radius = 0.0;
  double step = 0.0;         //!< finest step actually used
  double convergence = 0.0;  //!< |delta(h) - delta(h/2)|, step-halving estimate
};

//! Phase shift for partial wave l at momentum k, mass M.  Integrates from the
//! origin with series seeds, matches to free sphericals beyond the truncation
//! radius, and Richardson-combines two step sizes.  Throws std::domain_error
//! for Coulomb-tail potentials ("oracle requires a short-range potential").
PhaseShiftResult numerov_phase_shift(const RadialPotential& p, int l, double k,
                                     double M, double h = 1e-3);

//! Reduced radial solution w_l(r) normalized so that w_l -> sin(kr - l pi/2 +
//! delta_l) outside the potential (unit exterior amplitude).
struct RadialSolution {
  std::vector<double> r;
  std::vector<double> w;
  double delta = 0.0;
  double k = 0.0;
  int l = 0;
};

RadialSolution numerov_radial_solution(const RadialPotential& p, int l,
                                       double k, double M, double h = 1e-3);

//! Full partial-wave sum sigma = 4 pi sum (2l+1) sin^2(delta_l) / k^2 over
//! l = 0..lmax, each delta from the Numerov solver.
double oracle_cross_section(const RadialPotential& p, double k, double M,
                            int lmax, double h = 1e-3);

//! 1D scattering off the ramp-plateau profile in its native coordinate:
//! unit-amplitude transmitted wave is imposed on the right and the incident /
//! reflected amplitudes are read off in the free region on the left.
struct Transmission1D {
  cplx c_in{0.0, 0.0};   //!< incident amplitude producing unit transmission
  cplx c_out{0.0, 0.0};  //!< reflected amplitude on the same normalization
  cplx t{0.0, 0.0};      //!< transmission amplitude for unit incidence
  double max_abs = 0.0;          //!< max |psi| / |c_in| over the whole domain
  double max_abs_plateau = 0.0;  //!< max |psi| / |c_in| over the plateau
};

Transmission1D transmission_1d(const RadialPotential& ramp, double E, double M,
                               double h = 0.0);

//! Delta barrier alpha * delta(x) in 1D: returns (t, r) with t = 1/(1 +
//! i M alpha / k) and r = t - 1.
std::pair<cplx, cplx> delta_1d_transmission(double alpha, double k, double M);

//! Coulomb phase sigma_l = arg Gamma(l + 1 + i eta); exactly 0 when eta = 0.
double coulomb_sigma(int l, double eta);

//! Free reduced partial wave j_l(kr).
double free_partial_wave(int l, double k, double r);

}  // namespace scatterbound
