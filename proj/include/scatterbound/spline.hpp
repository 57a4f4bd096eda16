#pragma once
#include <vector>

#include "scatterbound/special_functions.hpp"

namespace scatterbound {

//! Complex-valued cubic interpolating spline with not-a-knot ends (natural
//! ends for fewer than four nodes). Nodes must be strictly increasing.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<cplx> y);

  struct Eval {
    cplx y, dy, d2y;
  };
  Eval all(double r) const;
  cplx value(double r) const { return all(r).y; }
  cplx deriv(double r) const { return all(r).dy; }
  cplx second(double r) const { return all(r).d2y; }

  const std::vector<double>& nodes() const { return x_; }
  const std::vector<cplx>& samples() const { return y_; }

 private:
  std::vector<double> x_;
  std::vector<cplx> y_, m_;  // m: nodal second derivatives
  std::size_t locate(double r) const;
};

}  // namespace scatterbound
