#pragma once

//! Radial potential catalog: evaluation, tail classification, and the
//! (sup bound, truncation radius) pair used by quadrature domains and the
//! 1D transfer bound.

#include <stdexcept>
#include <string>

namespace scatterbound {

enum class PotentialKind {
  zero,
  square_well,
  gaussian,
  exponential,
  ramp_plateau,
  inverse_square_cutoff,
  coulomb_plus_short_range,
};

enum class TailClass { compact, exponential, coulomb };

//! Parameter record for every supported radial potential.  Fields are
//! interpreted per kind; unused fields stay at their defaults.
struct RadialPotential {
  PotentialKind kind = PotentialKind::zero;
  double depth = 0.0;    //!< well depth (V = -depth inside) or peak strength
  double radius = 0.0;   //!< support radius or range scale
  double alpha = 0.0;    //!< Coulomb coefficient of the 1/r tail
  double alpha2 = 0.0;   //!< inverse-square coefficient alpha2 / r^2
  double r_core = 1e-3;  //!< inner cap radius for the inverse-square kind
  double epsilon = 0.0;  //!< plateau gap for the ramp-plateau kind
};

RadialPotential zero_potential();
RadialPotential square_well(double depth, double radius);
RadialPotential gaussian_potential(double strength, double range);
RadialPotential exponential_potential(double strength, double range);
RadialPotential ramp_plateau(double ramp_length, double epsilon);
RadialPotential inverse_square_cutoff(double alpha2, double r_core = 1e-3);
RadialPotential coulomb_plus_short_range(double alpha, double well_depth = 0.0,
                                         double well_radius = 0.0);

//! Asymptotic decay class of the potential's tail.
TailClass tail_class(const RadialPotential& p);

//! Point evaluation V(r).  Throws std::domain_error for r < 0, and for the
//! inverse-square kind at r = 0 when no core cap is set.
double evaluate(const RadialPotential& p, double r);

//! Ramp-plateau profile in its native 1D coordinate (support [-a, 2a],
//! plateau value exactly 1 - epsilon on (0, a)).
double ramp_plateau_1d(const RadialPotential& p, double x);

//! Sup-norm bound and truncation radius: |V(r)| <= v0 everywhere and
//! |V(r)| <= tol_tail for r >= r0.
struct BoundParams {
  double v0 = 0.0;
  double r0 = 0.0;
};

//! Computes BoundParams analytically per kind.  Throws std::domain_error for
//! the Coulomb kind (its tail never passes below any tolerance).
BoundParams bound_parameters(const RadialPotential& p, double tol_tail = 1e-12);

std::string kind_name(PotentialKind kind);
PotentialKind kind_from_name(const std::string& name);

}  // namespace scatterbound
