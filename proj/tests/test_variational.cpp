#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "scatterbound/bounds.hpp"
#include "scatterbound/job.hpp"
#include "scatterbound/oracles.hpp"
#include "scatterbound/potentials.hpp"
#include "scatterbound/quadrature.hpp"
#include "scatterbound/rng.hpp"
#include "scatterbound/variational.hpp"
#include "scatterbound/violation.hpp"
#include "scatterbound/wavefield.hpp"

namespace {

using namespace scatterbound;

//! Kick the bulk channel with a smooth interior bump and/or an f offset.
ScatteringAnsatz kicked(const ScatteringAnsatz& a0, cplx df, double bump) {
  ScatteringAnsatz a = a0;
  auto u = a.u;
  auto f = a.f;
  f[0] += df;
  const double rmax = a.grid.back();
  for (std::size_t i = 1; i + 1 < u[0].size(); ++i) {
    const double s = std::sin(std::numbers::pi * a.grid[i] / rmax);
    u[0][i] += cplx{bump * s, -0.5 * bump * s};
  }
  a.set_channels(u, f);
  return a;
}

}  // namespace

TEST_CASE("loss of the bare plane wave in free space is at the noise floor") {
  const RadialPotential p = zero_potential();
  const ScatteringAnsatz a = zero_ansatz(p, 1.0, 1.0, 2, 48, 10.0, 1.0);
  OptimizerConfig cfg;
  CHECK(loss(p, a, cfg) <= 1e-10);
}

TEST_CASE("loss agrees with the unsmoothed violation norm on the same mesh") {
  const RadialPotential p = square_well(1.0, 1.0);
  const ScatteringAnsatz a =
      oracle_resampled_ansatz(p, 1.0, 1.0, 2, 64, 11.0, 1.0);
  OptimizerConfig cfg;
  const RadialAngularMesh mesh = make_mesh(
      a.r_grid(), cfg.radial_panels, cfg.panel_order, cfg.angular_nodes);
  const double l1 = l1_norm(violation_field(p, a, mesh));
  // smoothing delta = 1e-12 perturbs each point by at most delta.
  CHECK(loss(p, a, cfg) == doctest::Approx(l1).epsilon(1e-7));
}

TEST_CASE("loss depends only on the assembled state, not its construction") {
  const RadialPotential p = square_well(1.0, 1.0);
  const ScatteringAnsatz a =
      oracle_resampled_ansatz(p, 1.0, 1.0, 2, 64, 11.0, 1.0);
  ScatteringAnsatz b =
      ScatteringAnsatz::make(a.k, a.m, a.lmax, a.grid, a.w, a.alpha);
  b.set_channels(a.u, a.f);
  OptimizerConfig cfg;
  CHECK(loss(p, a, cfg) == loss(p, b, cfg));
}

TEST_CASE("resampled oracle loss sits at a second-order discretization floor") {
  const RadialPotential p = square_well(1.0, 1.0);
  OptimizerConfig cfg;
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    const ScatteringAnsatz a =
        oracle_resampled_ansatz(p, 1.0, 1.0, 8, n, 11.0, 1.0);
    const double cur = loss(p, a, cfg);
    if (n > 32) CHECK(std::log2(prev / cur) >= 1.5);
    prev = cur;
  }
}

TEST_CASE("optimize terminates immediately when started at the oracle") {
  const RadialPotential p = square_well(1.0, 1.0);
  OptimizerConfig cfg;
  cfg.loss_tol = 1e-3;
  const ScatteringAnsatz a0 =
      oracle_resampled_ansatz(p, 1.0, 1.0, 1, 48, 11.0, 1.0);
  const double start = loss(p, a0, cfg);
  const OptimizationResult res = optimize(p, a0, cfg);
  CHECK(res.converged);
  CHECK(res.iterations <= 2);
  CHECK(res.final_loss <= start);
  CHECK(res.final_loss >= 0.99 * start);  // already at the floor
}

TEST_CASE("free-space optimization run certifies its own amplitude") {
  const RadialPotential p = zero_potential();
  ScatteringAnsatz a = zero_ansatz(p, 1.0, 1.0, 0, 32, 10.0, 1.0);
  auto u = a.u;
  auto f = a.f;
  f[0] = cplx{0.5, 0.0};
  a.set_channels(u, f);
  OptimizerConfig cfg;
  const double start = loss(p, a, cfg);
  const OptimizationResult res = optimize(p, a, cfg);
  CHECK(res.converged);
  CHECK(res.final_loss <= start);
  // The free-space corollary bounds the claimed amplitude by the violation.
  CHECK(std::abs(res.ansatz.f[0]) <=
        free_scattering_bound(res.ansatz.m, res.final_loss));
}

TEST_CASE("accepted-step losses decrease monotonically along the trace") {
  const RadialPotential p = square_well(1.0, 1.0);
  OptimizerConfig cfg;
  cfg.max_iters = 25;
  const ScatteringAnsatz a0 = kicked(
      oracle_resampled_ansatz(p, 1.0, 1.0, 0, 32, 11.0, 1.0), cplx{0.2, -0.1},
      0.05);
  const OptimizationResult res = optimize(p, a0, cfg);
  REQUIRE(!res.trace.empty());
  double prev = loss(p, a0, cfg) + 1e-12;
  int accepted = 0;
  for (const auto& row : res.trace) {
    if (!row.accepted) continue;
    CHECK(row.loss < prev);
    prev = row.loss;
    ++accepted;
  }
  CHECK(accepted >= 1);
  CHECK(res.final_loss == doctest::Approx(prev - 1e-12).epsilon(1e-12));
}

TEST_CASE("directional derivatives of the loss are step-size consistent") {
  const RadialPotential p = square_well(1.0, 1.0);
  OptimizerConfig cfg;
  const ScatteringAnsatz base = kicked(
      oracle_resampled_ansatz(p, 1.0, 1.0, 0, 32, 11.0, 1.0), cplx{0.12, -0.07},
      0.04);
  Rng rng(31415);
  for (int point = 0; point < 5; ++point) {
    const cplx df{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const double bump = rng.uniform(-0.5, 0.5);
    auto dir_loss = [&](double t) {
      return loss(p, kicked(base, t * df, t * bump), cfg);
    };
    const double h = 1e-4;
    const double d1 = (dir_loss(h) - dir_loss(-h)) / (2.0 * h);
    const double d2 = (dir_loss(0.5 * h) - dir_loss(-0.5 * h)) / h;
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-3));
  }
}

TEST_CASE("enriching the ansatz never increases the converged loss") {
  const RadialPotential p = square_well(1.0, 1.0);
  OptimizerConfig cfg;
  cfg.loss_tol = 1e-3;
  double prev = 1e300;
  for (int stage = 0; stage < 3; ++stage) {
    const ScatteringAnsatz a0 =
        oracle_resampled_ansatz(p, 1.0, 1.0, stage, 32 << stage, 11.0, 1.0);
    const OptimizationResult res = optimize(p, a0, cfg);
    CHECK(res.final_loss <= prev);
    prev = res.final_loss;
  }
}

TEST_CASE("any trial state obeys the measured phase-amplitude bound") {
  const RadialPotential p = square_well(1.0, 1.0);
  const PhaseShiftResult pr = numerov_phase_shift(p, 0, 1.0, 1.0);
  const cplx f_oracle = std::exp(cplx{0.0, pr.delta}) * std::sin(pr.delta);
  const XiEstimate xi = xi_linf_numerical(p, 0, 1.0, 1.0);
  const ScatteringAnsatz a0 =
      oracle_resampled_ansatz(p, 1.0, 1.0, 0, 48, 11.0, 1.0);
  const RadialAngularMesh mesh = make_mesh(a0.r_grid(), 64, 4, 32);
  Rng rng(99);
  bool nonvacuous = false;
  for (int trial = 0; trial < 3; ++trial) {
    const cplx df{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)};
    const double bump = trial == 0 ? 0.0 : rng.uniform(-0.05, 0.05);
    const ScatteringAnsatz a = kicked(a0, df, bump);
    const double l1 = l1_norm(violation_field(p, a, mesh));
    const double bound = phase_shift_error_bound(1.0, 0, xi.value, l1);
    const double err = std::abs(a.f[0] - f_oracle);
    CHECK(err <= bound);
    if (err >= 0.1 * bound) nonvacuous = true;
  }
  CHECK(nonvacuous);  // the pure-f kick saturates a sizeable bound fraction
}

TEST_CASE("optimize rejects a start whose loss is not finite") {
  const RadialPotential p = square_well(1.0, 1.0);
  ScatteringAnsatz a = zero_ansatz(p, 1.0, 1.0, 0, 32, 11.0, 1.0);
  auto u = a.u;
  auto f = a.f;
  u[0][u[0].size() / 2] = cplx{1e200, 0.0};  // squares overflow to inf
  a.set_channels(u, f);
  OptimizerConfig cfg;
  CHECK_THROWS_AS(optimize(p, a, cfg), std::domain_error);
}
