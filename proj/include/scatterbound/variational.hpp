#pragma once

//! L1 minimization of the residual (E - H) psi over the bulk node values and
//! out amplitudes.  The incident wave is never varied.  The loss is the mesh
//! L1 norm with a tiny smoothing delta (optimizer only); descent directions
//! are finite-difference gradients with a fixed per-parameter scaling, and
//! steps pass an Armijo backtracking test, so accepted losses decrease
//! strictly.

#include <cstdint>
#include <vector>

#include "scatterbound/potentials.hpp"
#include "scatterbound/wavefield.hpp"

namespace scatterbound {

struct OptimizerConfig {
  int max_iters = 400;
  double loss_tol = 1e-8;   //!< relative improvement below this => converged
  double step_tol = 1e-10;  //!< accepted step norm below this => converged
  double fd_step = 1e-6;
  double smoothing_delta = 1e-12;
  int radial_panels = 64;
  int panel_order = 4;
  int angular_nodes = 32;
  std::uint64_t seed = 0;  //!< echoed into outputs; the descent itself is
                           //!< deterministic
};

struct TraceRow {
  int iter = 0;
  double loss = 0.0;
  double step = 0.0;
  bool accepted = false;
};

struct OptimizationResult {
  ScatteringAnsatz ansatz;
  std::vector<TraceRow> trace;
  double final_loss = 0.0;
  int iterations = 0;
  bool converged = false;
  bool line_search_failed = false;
};

//! Smoothed mesh L1 loss of the trial state's residual.  delta = 0 gives the
//! plain quadrature L1 norm.
double loss(const RadialPotential& p, const ScatteringAnsatz& a,
            const OptimizerConfig& cfg = {});

//! Throws std::domain_error if the loss at a0 is not finite.
OptimizationResult optimize(const RadialPotential& p,
                            const ScatteringAnsatz& a0,
                            const OptimizerConfig& cfg = {});

}  // namespace scatterbound
