#include "scatterbound/potentials.hpp"

#include <algorithm>
#include <cmath>

namespace scatterbound {

RadialPotential zero_potential() { return {}; }

RadialPotential square_well(double depth, double radius) {
  RadialPotential p;
  p.kind = PotentialKind::square_well;
  p.depth = depth;
  p.radius = radius;
  return p;
}

RadialPotential gaussian_potential(double strength, double range) {
  RadialPotential p;
  p.kind = PotentialKind::gaussian;
  p.depth = strength;
  p.radius = range;
  return p;
}

RadialPotential exponential_potential(double strength, double range) {
  RadialPotential p;
  p.kind = PotentialKind::exponential;
  p.depth = strength;
  p.radius = range;
  return p;
}

RadialPotential ramp_plateau(double ramp_length, double epsilon) {
  RadialPotential p;
  p.kind = PotentialKind::ramp_plateau;
  p.radius = ramp_length;
  p.epsilon = epsilon;
  return p;
}

RadialPotential inverse_square_cutoff(double alpha2, double r_core) {
  RadialPotential p;
  p.kind = PotentialKind::inverse_square_cutoff;
  p.alpha2 = alpha2;
  p.r_core = r_core;
  return p;
}

RadialPotential coulomb_plus_short_range(double alpha, double well_depth,
                                         double well_radius) {
  RadialPotential p;
  p.kind = PotentialKind::coulomb_plus_short_range;
  p.alpha = alpha;
  p.depth = well_depth;
  p.radius = well_radius;
  return p;
}

TailClass tail_class(const RadialPotential& p) {
  switch (p.kind) {
    case PotentialKind::zero:
    case PotentialKind::square_well:
    case PotentialKind::ramp_plateau:
      return TailClass::compact;
    case PotentialKind::gaussian:
    case PotentialKind::exponential:
    case PotentialKind::inverse_square_cutoff:
      return TailClass::exponential;
    case PotentialKind::coulomb_plus_short_range:
      return TailClass::coulomb;
  }
  throw std::logic_error("tail_class: unknown kind");
}

double evaluate(const RadialPotential& p, double r) {
  if (r < 0.0) throw std::domain_error("evaluate: r must be >= 0");
  switch (p.kind) {
    case PotentialKind::zero:
      return 0.0;
    case PotentialKind::square_well:
      return r < p.radius ? -p.depth : 0.0;
    case PotentialKind::gaussian:
      return p.depth * std::exp(-r * r / (2.0 * p.radius * p.radius));
    case PotentialKind::exponential:
      return p.depth * std::exp(-r / p.radius);
    case PotentialKind::ramp_plateau:
      // Native profile lives on [-a, 2a]; the radial version shifts it so the
      // support starts at r = 0.
      return ramp_plateau_1d(p, r - p.radius);
    case PotentialKind::inverse_square_cutoff: {
      if (r <= p.r_core) {
        if (p.r_core <= 0.0)
          throw std::domain_error(
              "evaluate: inverse-square potential needs r > 0 or a core cap");
        return p.alpha2 / (p.r_core * p.r_core);
      }
      return p.alpha2 / (r * r);
    }
    case PotentialKind::coulomb_plus_short_range: {
      if (r == 0.0)
        throw std::domain_error("evaluate: Coulomb potential diverges at r=0");
      double v = p.alpha / r;
      if (r < p.radius) v -= p.depth;
      return v;
    }
  }
  throw std::logic_error("evaluate: unknown kind");
}

double ramp_plateau_1d(const RadialPotential& p, double x) {
  const double a = p.radius;
  const double top = 1.0 - p.epsilon;
  if (x <= -a || x >= 2.0 * a) return 0.0;
  if (x < 0.0) return top * (x / a + 1.0);
  if (x <= a) return top;
  return top * (2.0 - x / a);
}

BoundParams bound_parameters(const RadialPotential& p, double tol_tail) {
  if (tol_tail <= 0.0)
    throw std::domain_error("bound_parameters: tol_tail must be > 0");
  BoundParams b;
  switch (p.kind) {
    case PotentialKind::zero:
      return b;
    case PotentialKind::square_well:
      b.v0 = std::abs(p.depth);
      b.r0 = p.radius;
      return b;
    case PotentialKind::gaussian: {
      b.v0 = std::abs(p.depth);
      if (b.v0 <= tol_tail) return b;
      b.r0 = p.radius * std::sqrt(2.0 * std::log(b.v0 / tol_tail));
      return b;
    }
    case PotentialKind::exponential: {
      b.v0 = std::abs(p.depth);
      if (b.v0 <= tol_tail) return b;
      b.r0 = p.radius * std::log(b.v0 / tol_tail);
      return b;
    }
    case PotentialKind::ramp_plateau:
      b.v0 = std::abs(1.0 - p.epsilon);
      b.r0 = 3.0 * p.radius;
      return b;
    case PotentialKind::inverse_square_cutoff: {
      b.v0 = std::abs(evaluate(p, std::max(p.r_core, 1e-300)));
      if (std::abs(p.alpha2) <= 0.0) return b;
      b.r0 = std::sqrt(std::abs(p.alpha2) / tol_tail);
      return b;
    }
    case PotentialKind::coulomb_plus_short_range:
      throw std::domain_error(
          "bound_parameters: Coulomb tail admits no truncation radius");
  }
  throw std::logic_error("bound_parameters: unknown kind");
}

std::string kind_name(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::zero: return "zero";
    case PotentialKind::square_well: return "square-well";
    case PotentialKind::gaussian: return "gaussian";
    case PotentialKind::exponential: return "exponential";
    case PotentialKind::ramp_plateau: return "ramp-plateau";
    case PotentialKind::inverse_square_cutoff: return "inverse-square-cutoff";
    case PotentialKind::coulomb_plus_short_range:
      return "coulomb-plus-short-range";
  }
  throw std::logic_error("kind_name: unknown kind");
}

PotentialKind kind_from_name(const std::string& name) {
  if (name == "zero") return PotentialKind::zero;
  if (name == "square-well") return PotentialKind::square_well;
  if (name == "gaussian") return PotentialKind::gaussian;
  if (name == "exponential") return PotentialKind::exponential;
  if (name == "ramp-plateau") return PotentialKind::ramp_plateau;
  if (name == "inverse-square-cutoff")
    return PotentialKind::inverse_square_cutoff;
  if (name == "coulomb-plus-short-range")
    return PotentialKind::coulomb_plus_short_range;
  throw std::domain_error("unknown potential kind: " + name);
}

}  // namespace scatterbound
