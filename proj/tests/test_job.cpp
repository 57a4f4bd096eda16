#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "scatterbound/bounds.hpp"
#include "scatterbound/job.hpp"
#include "scatterbound/potentials.hpp"
#include "scatterbound/serialize.hpp"

namespace {

using namespace scatterbound;
using nlohmann::json;

json base_config() {
  return json{{"potential",
               {{"kind", "square-well"}, {"depth", -1.0}, {"radius", 1.0}}},
              {"physics", {{"k", 1.0}, {"mass", 1.0}, {"lmax", 0}}}};
}

//! The thrown message must locate the offending key, JSON-pointer style.
void check_parse_error(const json& cfg, const std::string& command,
                       const std::string& needle) {
  try {
    JobConfig::parse(cfg, command);
    FAIL_CHECK("expected ConfigError mentioning " << needle);
  } catch (const ConfigError& ex) {
    CHECK(std::string(ex.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("config parsing applies the signed-depth convention and defaults") {
  const JobConfig cfg = JobConfig::parse(base_config(), "solve");
  CHECK(cfg.potential.kind == PotentialKind::square_well);
  CHECK(evaluate(cfg.potential, 0.5) == -1.0);  // attractive well
  CHECK(evaluate(cfg.potential, 1.5) == 0.0);
  CHECK(cfg.k == 1.0);
  CHECK(cfg.mass == 1.0);
  CHECK(cfg.lmax == 0);
  CHECK(cfg.grid_nodes == 128);
  CHECK(cfg.start == "zero");
  CHECK(cfg.xi_source == "numerical");
  REQUIRE(cfg.bound_requests.size() == 3);
  CHECK(cfg.bound_requests[0] == "phase-shift");
  CHECK(cfg.bound_requests[1] == "cross-section-interval");
  CHECK(cfg.bound_requests[2] == "pointwise-amplitude");

  // A repulsive barrier keeps the sign.
  json barrier = base_config();
  barrier["potential"]["depth"] = 2.0;
  const JobConfig bcfg = JobConfig::parse(barrier, "solve");
  CHECK(evaluate(bcfg.potential, 0.5) == 2.0);

  // The zero potential gains the free-amplitude corollary by default.
  json freec = base_config();
  freec["potential"] = {{"kind", "zero"}};
  const JobConfig fcfg = JobConfig::parse(freec, "solve");
  REQUIRE(fcfg.bound_requests.size() == 4);
  CHECK(fcfg.bound_requests[3] == "free-amplitude");
}

TEST_CASE("config parsing reports offending keys by path") {
  json cfg = base_config();
  cfg["extra"] = 1;
  check_parse_error(cfg, "solve", "/extra");

  cfg = base_config();
  cfg["potential"].erase("depth");
  check_parse_error(cfg, "solve", "/potential/depth");

  cfg = base_config();
  cfg["potential"]["kind"] = "cubic-well";
  check_parse_error(cfg, "solve", "/potential/kind");

  cfg = base_config();
  cfg["physics"]["lmax"] = 21;
  check_parse_error(cfg, "solve", "/physics/lmax");

  cfg = base_config();
  cfg["physics"]["k"] = -1.0;
  check_parse_error(cfg, "solve", "/physics/k");

  cfg = base_config();
  cfg["ansatz"] = {{"grid_nodes", 4}};
  check_parse_error(cfg, "solve", "/ansatz/grid_nodes");

  cfg = base_config();
  cfg["ansatz"] = {{"grid_nodes", 8192}};
  check_parse_error(cfg, "solve", "/ansatz/grid_nodes");

  cfg = base_config();
  cfg["ansatz"] = {{"start", "random"}};
  check_parse_error(cfg, "solve", "/ansatz/start");

  cfg = base_config();
  cfg["optimizer"] = {{"seed", -3}};
  check_parse_error(cfg, "solve", "/optimizer/seed");

  cfg = base_config();
  cfg["bounds"] = {{"requests", json::array({"phase-shift", "phase-shift"})}};
  check_parse_error(cfg, "solve", "/bounds/requests/1");

  cfg = base_config();
  cfg["bounds"] = {{"requests", json::array({"not-a-theorem"})}};
  check_parse_error(cfg, "solve", "/bounds/requests/0");

  cfg = base_config();
  cfg["bounds"] = {{"xi_value", 2.0}};
  check_parse_error(cfg, "solve", "/bounds/xi_value");

  CHECK_THROWS_AS(JobConfig::parse(base_config(), "fly"), std::logic_error);
}

TEST_CASE("the bound command requires its measured inputs") {
  json cfg = base_config();
  cfg["bounds"] = {{"requests", json::array({"phase-shift"})}};
  check_parse_error(cfg, "bound", "/bounds/l1");

  cfg["bounds"]["l1"] = 0.5;
  CHECK_NOTHROW(JobConfig::parse(cfg, "bound"));

  cfg["bounds"]["requests"] = json::array({"cross-section-interval"});
  check_parse_error(cfg, "bound", "/bounds/sigma_tilde");

  cfg["bounds"]["requests"] = json::array({"pointwise-amplitude"});
  check_parse_error(cfg, "bound", "/bounds/psi_inf");
}

TEST_CASE("solve and oracle refuse potentials without an integrable residual") {
  json cfg = base_config();
  cfg["potential"] = {{"kind", "coulomb-plus-short-range"}, {"alpha", 1.0}};
  check_parse_error(cfg, "solve", "/potential/kind");
  check_parse_error(cfg, "oracle", "/potential/kind");

  // bound still works for such tails when xi is supplied.
  cfg["bounds"] = {{"requests", json::array({"phase-shift"})},
                   {"xi_source", "fixed"},
                   {"xi_value", 2.0},
                   {"l1", 0.1}};
  CHECK_NOTHROW(JobConfig::parse(cfg, "bound"));
  cfg["bounds"]["xi_source"] = "numerical";
  cfg["bounds"].erase("xi_value");
  check_parse_error(cfg, "bound", "/bounds/xi_source");
}

TEST_CASE("effective geometry defaults derive from potential and wavenumber") {
  const JobConfig cfg = JobConfig::parse(base_config(), "solve");
  CHECK(effective_r_grid(cfg) == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(effective_window_scale(cfg) == doctest::Approx(1.0).epsilon(1e-15));

  json zc = base_config();
  zc["potential"] = {{"kind", "zero"}};
  zc["physics"]["k"] = 2.0;
  const JobConfig zcfg = JobConfig::parse(zc, "solve");
  CHECK(effective_r_grid(zcfg) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(effective_window_scale(zcfg) == doctest::Approx(0.5).epsilon(1e-15));

  json oc = base_config();
  oc["ansatz"] = {{"r_grid", 14.0}, {"window_scale", 0.7}};
  const JobConfig ocfg = JobConfig::parse(oc, "solve");
  CHECK(effective_r_grid(ocfg) == 14.0);
  CHECK(effective_window_scale(ocfg) == 0.7);
}

TEST_CASE("the clustered ansatz grid keeps the jump radius as a node") {
  const JobConfig cfg = JobConfig::parse(base_config(), "solve");
  const auto grid = ansatz_grid(cfg.potential, 11.0, 64);
  bool has_jump = false;
  for (double r : grid) has_jump |= (r == 1.0);
  CHECK(has_jump);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 11.0);

  const ScatteringAnsatz z = zero_ansatz(cfg.potential, 1.0, 1.0, 1, 64, 11.0, 1.0);
  CHECK(z.grid == grid);
  for (const auto& ch : z.u)
    for (const auto& v : ch) CHECK(v == cplx{0.0, 0.0});
}

TEST_CASE("oracle command pins the square-well phase shift and csv shape") {
  json cfg = base_config();
  cfg["physics"]["lmax"] = 1;
  const JobConfig jc = JobConfig::parse(cfg, "oracle");
  const OracleArtifacts art = run_oracle(jc);

  CHECK(art.report.at("format") == "scatterbound-report");
  CHECK(art.report.at("command") == "oracle");
  const auto& rows = art.report.at("rows");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].at("l") == 0);
  CHECK(rows[0].at("delta").get<double>() ==
        doctest::Approx(0.8454245377537225).epsilon(1e-12));
  CHECK(rows[1].at("delta").get<double>() ==
        doctest::Approx(0.0506539578180193).epsilon(1e-12));
  const double sigma = art.report.at("cross_section").get<double>();
  const double d0 = rows[0].at("delta").get<double>();
  const double d1 = rows[1].at("delta").get<double>();
  const double expect = 4.0 * std::numbers::pi *
                        (std::sin(d0) * std::sin(d0) +
                         3.0 * std::sin(d1) * std::sin(d1));
  CHECK(sigma == doctest::Approx(expect).epsilon(1e-12));

  CHECK(art.csv.rfind("l,delta,f_re,f_im,matching_radius,step,convergence\n",
                      0) == 0);
  // Deterministic artifacts: a second run is byte-identical.
  const OracleArtifacts again = run_oracle(jc);
  CHECK(again.csv == art.csv);
  CHECK(again.report.dump(2) == art.report.dump(2));
}

TEST_CASE("bound command reproduces the closed-form theorem values") {
  json cfg = base_config();
  cfg["physics"]["lmax"] = 1;
  cfg["bounds"] = {{"requests",
                    json::array({"phase-shift", "cross-section-interval",
                                 "pointwise-amplitude", "free-amplitude",
                                 "amplitude-series", "transfer-envelope"})},
                   {"xi_source", "fixed"},
                   {"xi_value", 2.0},
                   {"l1", 0.3},
                   {"sigma_tilde", 1.0},
                   {"psi_inf", 1.5}};
  const JobConfig jc = JobConfig::parse(cfg, "bound");
  const auto report = run_bound(jc);
  const auto& bounds = report.at("bounds");
  REQUIRE(bounds.size() == 7);  // phase-shift expands per l

  const double pi = std::numbers::pi;
  CHECK(bounds[0].at("theorem") == "phase-shift");
  CHECK(bounds[0].at("l") == 0);
  CHECK(bounds[0].at("value").get<double>() ==
        doctest::Approx(2.0 * 0.3 / (2.0 * pi)).epsilon(1e-14));
  CHECK(bounds[1].at("l") == 1);
  CHECK(bounds[1].at("value").get<double>() ==
        doctest::Approx(2.0 * 0.3 / (6.0 * pi)).epsilon(1e-14));
  CHECK(bounds[0].at("rigor") == "user-supplied");

  CHECK(bounds[2].at("theorem") == "cross-section-interval");
  const double hw = 2.0 * 0.3 / (2.0 * std::sqrt(pi));
  CHECK(bounds[2].at("value").at("half_width").get<double>() ==
        doctest::Approx(hw).epsilon(1e-14));
  CHECK(bounds[2].at("value").at("lo").get<double>() ==
        doctest::Approx((1.0 - hw) * (1.0 - hw)).epsilon(1e-12));
  CHECK(bounds[2].at("value").at("hi").get<double>() ==
        doctest::Approx((1.0 + hw) * (1.0 + hw)).epsilon(1e-12));

  CHECK(bounds[3].at("theorem") == "pointwise-amplitude");
  CHECK(bounds[3].at("value").get<double>() ==
        doctest::Approx(1.5 * 0.3 / pi).epsilon(1e-14));

  CHECK(bounds[4].at("theorem") == "free-amplitude");
  CHECK(bounds[4].at("value").get<double>() ==
        doctest::Approx(0.3 / pi).epsilon(1e-14));

  // gamma*(square well, unit depth and radius) = 1: the series does not close.
  CHECK(bounds[5].at("theorem") == "amplitude-series");
  CHECK(bounds[5].at("value").is_null());
  CHECK(bounds[5].at("inputs").at("gamma_star").get<double>() ==
        doctest::Approx(1.0).epsilon(1e-10));

  CHECK(bounds[6].at("theorem") == "transfer-envelope");
  CHECK(bounds[6].at("value").get<double>() ==
        doctest::Approx(xi_linf_transfer_1d(1.0, 0.5, 1.0, 1.0, 1.0))
            .epsilon(1e-14));
  CHECK(bounds[6].at("rigor") == "rigorous-formula");
}

TEST_CASE("amplitude-series closes for a shallow well") {
  json cfg = base_config();
  cfg["potential"]["depth"] = -0.25;
  cfg["bounds"] = {{"requests", json::array({"amplitude-series"})},
                   {"l1", 0.0}};
  const auto report = run_bound(JobConfig::parse(cfg, "bound"));
  const auto& entry = report.at("bounds").at(0);
  CHECK(entry.at("inputs").at("gamma_star").get<double>() ==
        doctest::Approx(0.25).epsilon(1e-10));
  CHECK(entry.at("value").get<double>() ==
        doctest::Approx(1.0 / 0.75).epsilon(1e-9));
}

TEST_CASE("solve command produces a coherent, certified, reloadable report") {
  json cfg = base_config();
  cfg["ansatz"] = {{"grid_nodes", 32}, {"start", "oracle"}};
  cfg["optimizer"] = {{"max_iters", 4},
                      {"loss_tol", 1e-3},
                      {"radial_panels", 32},
                      {"panel_order", 3},
                      {"angular_nodes", 8}};
  const JobConfig jc = JobConfig::parse(cfg, "solve");
  const SolveArtifacts art = run_solve(jc);

  CHECK(art.exit_code == 0);
  CHECK(art.report.at("command") == "solve");
  CHECK(art.report.at("optimizer").at("converged").get<bool>());
  const double l1 = art.report.at("violation").at("l1").get<double>();
  CHECK(l1 > 0.0);
  CHECK(l1 < 5.0);

  // The certified amplitude error must dominate the actual oracle mismatch.
  const auto& errs = art.report.at("oracle").at("amplitude_errors");
  REQUIRE(errs.size() == 1);
  const double actual = errs[0].at("actual").get<double>();
  const double bound = errs[0].at("bound").get<double>();
  CHECK(actual <= bound);

  // Trace rows stream with the fixed header; the ansatz reloads bit-exactly.
  CHECK(art.trace_csv.rfind("iter,loss,step,accepted\n", 0) == 0);
  const ScatteringAnsatz back = ansatz_from_json(art.ansatz);
  CHECK(back.lmax == 0);
  CHECK(back.grid.back() == doctest::Approx(11.0).epsilon(1e-15));

  // Physics echo carries E = k^2 / 2m and eta = 0 for short-range tails.
  CHECK(art.report.at("physics").at("energy").get<double>() ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(art.report.at("physics").at("eta").get<double>() == 0.0);
}

TEST_CASE("pathology driver emits the table with its honest verdicts") {
  const PathologyArtifacts all = run_pathology("all", false);
  CHECK(all.table.find("[amplitude-ramp instability]") != std::string::npos);
  CHECK(all.table.find("[expectation tuning]") != std::string::npos);
  CHECK(all.table.find("[probability nonconservation]") != std::string::npos);
  CHECK(all.table.find("[slow-ramp amplification]") != std::string::npos);
  CHECK(all.table.find("[inverse-square collapse]") != std::string::npos);
  // The slow-ramp plateau amplitude sits on a resonance fringe at the pinned
  // parameters; the demo reports that mismatch honestly.
  CHECK(all.table.find("plateau amplitude") != std::string::npos);
  CHECK_FALSE(all.all_pass);
  CHECK(all.table.find("overall: FAIL") != std::string::npos);
  CHECK(all.csvs.empty());

  const PathologyArtifacts tuning = run_pathology("tuning", false);
  CHECK(tuning.all_pass);
  CHECK(tuning.table.find("overall: PASS") != std::string::npos);

  const PathologyArtifacts scan = run_pathology("instability", true);
  REQUIRE(scan.csvs.count("instability_scan.csv") == 1);
  CHECK(scan.csvs.at("instability_scan.csv")
            .rfind("n,l2sq_interior,l1_interior,kink_mass,flux_jump\n", 0) == 0);
  CHECK(scan.all_pass);

  const PathologyArtifacts seeded = run_pathology("tuning", false, 7, true);
  CHECK(seeded.table.rfind("# seed 7\n", 0) == 0);

  CHECK_THROWS_AS(run_pathology("bogus", false), ConfigError);
}
