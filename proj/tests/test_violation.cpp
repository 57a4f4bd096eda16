#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "scatterbound/job.hpp"
#include "scatterbound/oracles.hpp"
#include "scatterbound/potentials.hpp"
#include "scatterbound/quadrature.hpp"
#include "scatterbound/rng.hpp"
#include "scatterbound/violation.hpp"
#include "scatterbound/wavefield.hpp"

namespace {

using namespace scatterbound;

constexpr double kPi = std::numbers::pi;

//! Free s-wave eigenstate encoded purely through the bulk spline: u0 = sin(kr)
//! on [0, 3*pi] so both endpoint clamps are exact zeros of the channel.
ScatteringAnsatz encoded_free_swave(int nodes) {
  const double rmax = 3.0 * kPi;
  std::vector<double> grid = geometric_grid(rmax, nodes);
  ScatteringAnsatz a = ScatteringAnsatz::make(1.0, 1.0, 0, grid, 1.0);
  a.incident = false;
  std::vector<std::vector<cplx>> ch(1, std::vector<cplx>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    ch[0][i] = cplx{std::sin(grid[i]), 0.0};
  a.set_channels(ch, std::vector<cplx>(1, cplx{0.0, 0.0}));
  return a;
}

//! Outgoing-only l=0 state: no incident wave, no bulk, f0 only.
ScatteringAnsatz outgoing_only(cplx f0) {
  std::vector<double> grid = geometric_grid(10.0, 64);
  ScatteringAnsatz a = ScatteringAnsatz::make(1.0, 1.0, 0, grid, 1.0);
  a.incident = false;
  std::vector<std::vector<cplx>> ch(1,
                                    std::vector<cplx>(grid.size(), cplx{}));
  a.set_channels(ch, std::vector<cplx>(1, f0));
  return a;
}

MultiComponentField constant_field(const RadialAngularMesh& mesh, cplx value) {
  MultiComponentField f;
  f.mesh = mesh;
  f.comp.assign(1, std::vector<cplx>(mesh.r.size() * mesh.u.size(), value));
  return f;
}

}  // namespace

TEST_CASE("l1 and l2sq norms on constant fields reduce to ball volume") {
  const RadialAngularMesh mesh = make_mesh(1.0, 8, 4, 8);
  const MultiComponentField zero = constant_field(mesh, cplx{0.0, 0.0});
  CHECK(l1_norm(zero) == 0.0);
  CHECK(l2sq_norm(zero) == 0.0);

  const MultiComponentField one = constant_field(mesh, cplx{1.0, 0.0});
  const double vol = 4.0 * kPi / 3.0;
  CHECK(l1_norm(one) == doctest::Approx(vol).epsilon(1e-13));
  CHECK(l2sq_norm(one) == doctest::Approx(vol).epsilon(1e-13));

  // |3-4i| = 5 pointwise, |.|^2 = 25.
  const MultiComponentField z = constant_field(mesh, cplx{3.0, -4.0});
  CHECK(l1_norm(z) == doctest::Approx(5.0 * vol).epsilon(1e-13));
  CHECK(l2sq_norm(z) == doctest::Approx(25.0 * vol).epsilon(1e-13));
}

TEST_CASE("free space with the bare plane-wave ansatz has zero violation") {
  const RadialPotential p = zero_potential();
  const ScatteringAnsatz a = zero_ansatz(p, 1.0, 1.0, 4, 64, 10.0, 1.0);
  const RadialAngularMesh mesh = make_mesh(a.grid, 4, 16);
  const MultiComponentField field = violation_field(p, a, mesh);

  double sup = 0.0;
  for (const auto& c : field.comp)
    for (const auto& v : c) sup = std::max(sup, std::abs(v));
  CHECK(sup <= 1e-12);
  CHECK(l1_norm(field) <= 1e-10);
}

TEST_CASE("encoded free s-wave violates only at spline discretization order") {
  const RadialPotential p = zero_potential();
  std::vector<double> l1;
  for (int n : {64, 128, 256}) {
    const ScatteringAnsatz a = encoded_free_swave(n);
    const RadialAngularMesh mesh = make_mesh(a.grid, 6, 8);
    l1.push_back(l1_norm(violation_field(p, a, mesh)));
  }
  CHECK(l1[0] == doctest::Approx(1.3222627757138266).epsilon(1e-9));
  CHECK(l1[1] == doctest::Approx(0.20584407246989553).epsilon(1e-9));
  CHECK(l1[2] == doctest::Approx(0.04254903616636041).epsilon(1e-9));
  for (std::size_t i = 0; i + 1 < l1.size(); ++i) {
    const double order = std::log2(l1[i] / l1[i + 1]);
    CHECK(order >= 1.9);
  }
}

TEST_CASE("square-well resampled oracle state converges at second order") {
  const RadialPotential p = square_well(1.0, 1.0);
  double l1[2];
  int idx = 0;
  for (int n : {64, 128}) {
    const ScatteringAnsatz a =
        oracle_resampled_ansatz(p, 1.0, 1.0, 8, n, 11.0, 1.0);
    const RadialAngularMesh mesh = make_mesh(a.grid, 6, 16);
    l1[idx++] = l1_norm(violation_field(p, a, mesh));
  }
  CHECK(l1[0] == doctest::Approx(0.032877424082544092).epsilon(1e-9));
  CHECK(l1[1] == doctest::Approx(0.0084077306134892615).epsilon(1e-9));
  CHECK(std::log2(l1[0] / l1[1]) >= 1.9);
}

TEST_CASE("l2sq of the encoded eigenstate refines at least as fast as l1") {
  const RadialPotential p = zero_potential();
  std::vector<double> l2;
  for (int n : {64, 128, 256}) {
    const ScatteringAnsatz a = encoded_free_swave(n);
    const RadialAngularMesh mesh = make_mesh(a.grid, 6, 8);
    l2.push_back(l2sq_norm(violation_field(p, a, mesh)));
  }
  for (std::size_t i = 0; i + 1 < l2.size(); ++i) {
    const double order = std::log2(l2[i] / l2[i + 1]);
    CHECK(order >= 2.0);
  }
}

TEST_CASE("violation_field rejects meshes beyond the bulk grid") {
  const RadialPotential p = zero_potential();
  const ScatteringAnsatz a = zero_ansatz(p, 1.0, 1.0, 0, 32, 10.0, 1.0);
  const RadialAngularMesh mesh = make_mesh(12.0, 4, 4, 8);
  CHECK_THROWS_AS(violation_field(p, a, mesh), std::domain_error);
}

TEST_CASE("holder pairing saturates for the unit-phase conjugate witness") {
  const RadialPotential p = square_well(1.0, 1.0);
  const ScatteringAnsatz a = oracle_resampled_ansatz(p, 1.0, 1.0, 2, 48, 11.0, 1.0);
  const RadialAngularMesh mesh = make_mesh(a.grid, 4, 8);
  const MultiComponentField f = violation_field(p, a, mesh);

  MultiComponentField g = f;
  for (auto& c : g.comp)
    for (auto& z : c) {
      const double mag = std::abs(z);
      z = mag > 0.0 ? std::conj(z) / mag : cplx{1.0, 0.0};
    }
  const auto [lhs, rhs] = holder_pair(f, g);
  CHECK(lhs == doctest::Approx(l1_norm(f)).epsilon(1e-13));
  CHECK(rhs == doctest::Approx(lhs).epsilon(1e-12));

  const MultiComponentField zero_g = constant_field(mesh, cplx{0.0, 0.0});
  const auto [lhs0, rhs0] = holder_pair(f, zero_g);
  CHECK(lhs0 == doctest::Approx(lhs).epsilon(1e-13));
  CHECK(rhs0 == 0.0);
}

TEST_CASE("holder pairing never exceeds the L1 norm for admissible tests") {
  const RadialAngularMesh mesh = make_mesh(2.0, 4, 3, 6);
  const std::size_t npts = mesh.r.size() * mesh.u.size();
  Rng rng(20260813);
  for (int trial = 0; trial < 1000; ++trial) {
    MultiComponentField f, g;
    f.mesh = mesh;
    g.mesh = mesh;
    f.comp.assign(1, std::vector<cplx>(npts));
    g.comp.assign(1, std::vector<cplx>(npts));
    for (std::size_t i = 0; i < npts; ++i) {
      f.comp[0][i] = cplx{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      const double mag = rng.uniform();
      const double ph = rng.uniform(0.0, 2.0 * kPi);
      g.comp[0][i] = mag * std::exp(cplx{0.0, ph});
    }
    const auto [lhs, rhs] = holder_pair(f, g);
    CHECK(lhs >= rhs - 1e-12);
  }
}

TEST_CASE("holder pairing validates its inputs") {
  const RadialAngularMesh mesh = make_mesh(1.0, 2, 3, 4);
  MultiComponentField f = constant_field(mesh, cplx{1.0, 0.0});
  MultiComponentField big = constant_field(mesh, cplx{1.5, 0.0});
  CHECK_THROWS_AS(holder_pair(f, big), std::domain_error);

  const RadialAngularMesh other = make_mesh(1.0, 3, 3, 4);
  MultiComponentField g = constant_field(other, cplx{0.5, 0.0});
  CHECK_THROWS_AS(holder_pair(f, g), std::domain_error);
}

TEST_CASE("probability flux of a real standing wave vanishes identically") {
  const ScatteringAnsatz a = encoded_free_swave(64);
  for (double r : {0.5, 2.0, 5.0, 9.0})
    for (double u : {-0.7, 0.1, 0.9}) CHECK(probability_flux(a, r, u) == 0.0);
}

TEST_CASE("probability flux of a pure outgoing s-wave matches k|f0|^2/(m r^2)") {
  const cplx f0{0.4, -0.3};
  const ScatteringAnsatz a = outgoing_only(f0);
  const double r = 9.0;  // window saturated, 1/r correction negligible
  const double expect = std::norm(f0) / (r * r);
  for (double u : {-0.5, 0.0, 0.8})
    CHECK(probability_flux(a, r, u) == doctest::Approx(expect).epsilon(1e-10));
  CHECK(flux_through_sphere(a, r) ==
        doctest::Approx(4.0 * kPi * std::norm(f0)).epsilon(1e-10));
}

TEST_CASE("plane-wave flux is k u / m pointwise and balances over the sphere") {
  const RadialPotential p = zero_potential();
  const ScatteringAnsatz a = zero_ansatz(p, 1.0, 1.0, 0, 64, 10.0, 1.0);
  for (double u : {-0.7, -0.3, 0.3, 0.7})
    CHECK(probability_flux(a, 7.0, u) == doctest::Approx(u).epsilon(1e-12));
  CHECK(std::abs(flux_through_sphere(a, 7.0)) <= 1e-10);
  CHECK_THROWS_AS(flux_through_sphere(a, 0.0), std::domain_error);
}

TEST_CASE("resampled oracle state conserves net flux at every radius") {
  const RadialPotential p = square_well(1.0, 1.0);
  const ScatteringAnsatz a =
      oracle_resampled_ansatz(p, 1.0, 1.0, 8, 256, 11.0, 1.0);
  for (double rr : {2.0, 5.5, 9.0, 11.0})
    CHECK(std::abs(flux_through_sphere(a, rr)) <= 1e-6);
}

TEST_CASE("oracle partial waves satisfy the optical theorem exactly") {
  const RadialPotential p = square_well(1.0, 1.0);
  const double k = 1.0, m = 1.0;
  const int lmax = 8;
  double im_f_forward = 0.0;
  for (int l = 0; l <= lmax; ++l) {
    const PhaseShiftResult pr = numerov_phase_shift(p, l, k, m);
    const cplx fl = std::exp(cplx{0.0, pr.delta}) * std::sin(pr.delta) / k;
    im_f_forward += (2.0 * l + 1.0) * std::imag(fl);
  }
  const double sigma = oracle_cross_section(p, k, m, lmax);
  CHECK(im_f_forward ==
        doctest::Approx(k * sigma / (4.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("violation_report pins the square-well resample diagnostics") {
  const RadialPotential p = square_well(1.0, 1.0);
  const ScatteringAnsatz a = oracle_resampled_ansatz(p, 1.0, 1.0, 2, 96, 11.0, 1.0);
  const ViolationReport rep = violation_report(p, a, 64, 4, 32);

  CHECK(rep.l1 == doctest::Approx(0.049734227919312389).epsilon(1e-12));
  CHECK(rep.l1_error == doctest::Approx(0.004598937999254038).epsilon(1e-9));
  CHECK(rep.l2sq == doctest::Approx(0.00073980529198042764).epsilon(1e-12));
  CHECK(rep.l2sq_error ==
        doctest::Approx(8.7616216564114836e-05).epsilon(1e-9));
  CHECK(rep.flux_in == doctest::Approx(-375.70379760658142).epsilon(1e-12));
  CHECK(rep.flux_out == doctest::Approx(375.70379760658147).epsilon(1e-12));
  CHECK(std::abs(rep.flux_net) <= 1e-9);
  CHECK(rep.flux_error >= 0.0);
  CHECK(rep.l1_error <= 0.15 * rep.l1);
  CHECK(rep.radial_panels == 64);
  CHECK(rep.panel_order == 4);
  CHECK(rep.angular_nodes == 32);
}

TEST_CASE("violation_report refuses a grid that truncates the potential") {
  const RadialPotential p = gaussian_potential(2.0, 1.5);
  const ScatteringAnsatz a = zero_ansatz(p, 1.0, 1.0, 0, 32, 5.0, 1.0);
  CHECK_THROWS_AS(violation_report(p, a, 16, 4, 8), std::domain_error);
}
