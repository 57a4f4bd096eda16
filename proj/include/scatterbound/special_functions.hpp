#pragma once
#include <complex>
#include <vector>

namespace scatterbound {

using cplx = std::complex<double>;

//! P_0..P_lmax at u via the upward three-term recurrence.
std::vector<double> legendre_table(int lmax, double u);
double legendre_p(int l, double u);

//! Regular spherical Bessel j_l(x); downward recurrence (stable), power
//! series for small arguments.
double sph_bessel_j(int l, double x);
//! Irregular spherical Bessel y_l(x); upward recurrence (stable). x > 0.
double sph_bessel_y(int l, double x);
//! Outgoing spherical Hankel h^(1)_l = j_l + i y_l and its derivative. x > 0.
cplx sph_hankel1(int l, double x);
cplx sph_hankel1_deriv(int l, double x);

//! log Gamma(z) for Re z > 0 (Lanczos); the imaginary part is the phase.
cplx log_gamma(cplx z);

}  // namespace scatterbound
