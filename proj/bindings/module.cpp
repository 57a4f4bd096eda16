//! Python bindings for the main scatterbound operations: potential catalog,
//! reference solvers, certified-bound formulas, counterexample demos, and the
//! JSON-config job layer used by the CLI.  Reports cross the boundary as JSON
//! strings so Python sees byte-identical content to the CLI output files.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "json.hpp"
#include "scatterbound/bounds.hpp"
#include "scatterbound/job.hpp"
#include "scatterbound/oracles.hpp"
#include "scatterbound/pathology.hpp"
#include "scatterbound/potentials.hpp"

namespace py = pybind11;
using namespace scatterbound;

namespace {

std::string dump_report(const nlohmann::ordered_json& j) {
  return j.dump(2) + "\n";
}

nlohmann::json parse_config(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
  }
}

py::dict xi_dict(const XiEstimate& x) {
  py::dict d;
  d["value"] = x.value;
  d["raw_max"] = x.raw_max;
  d["rigor"] = x.rigor == XiRigor::rigorous_formula ? "rigorous-formula"
                                                    : "numerically-estimated";
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Scattering states certified through L1 residual norms: potentials, "
      "reference phase shifts, stability bounds, and counterexample demos.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<RadialPotential>(m, "Potential")
      .def("__repr__", [](const RadialPotential& p) {
        return "<Potential kind=" + kind_name(p.kind) + ">";
      });

  m.def("zero_potential", &zero_potential);
  m.def("square_well", &square_well, py::arg("depth"), py::arg("radius"));
  m.def("gaussian_potential", &gaussian_potential, py::arg("strength"),
        py::arg("range"));
  m.def("exponential_potential", &exponential_potential, py::arg("strength"),
        py::arg("range"));
  m.def("ramp_plateau", &ramp_plateau, py::arg("ramp_length"),
        py::arg("epsilon"));
  m.def("inverse_square_cutoff", &inverse_square_cutoff, py::arg("alpha2"),
        py::arg("r_core") = 1e-3);
  m.def("coulomb_plus_short_range", &coulomb_plus_short_range,
        py::arg("alpha"), py::arg("well_depth") = 0.0,
        py::arg("well_radius") = 0.0);

  m.def("evaluate", &evaluate, py::arg("potential"), py::arg("r"),
        "Point evaluation V(r).");
  m.def(
      "tail_class",
      [](const RadialPotential& p) {
        switch (tail_class(p)) {
          case TailClass::compact: return std::string("compact");
          case TailClass::exponential: return std::string("exponential");
          default: return std::string("coulomb");
        }
      },
      py::arg("potential"));
  m.def(
      "bound_parameters",
      [](const RadialPotential& p, double tol_tail) {
        BoundParams b = bound_parameters(p, tol_tail);
        py::dict d;
        d["v0"] = b.v0;
        d["r0"] = b.r0;
        return d;
      },
      py::arg("potential"), py::arg("tol_tail") = 1e-12,
      "Sup bound v0 and truncation radius r0 with |V| <= tol_tail beyond r0.");

  m.def(
      "phase_shift",
      [](const RadialPotential& p, int l, double k, double mass, double h) {
        PhaseShiftResult r = numerov_phase_shift(p, l, k, mass, h);
        py::dict d;
        d["delta"] = r.delta;
        d["f"] = r.f_l;
        d["matching_radius"] = r.matching_radius;
        d["step"] = r.step;
        d["convergence"] = r.convergence;
        return d;
      },
      py::arg("potential"), py::arg("l"), py::arg("k"), py::arg("mass"),
      py::arg("h") = 1e-3,
      "Reference phase shift with a step-halving convergence estimate.");
  m.def("cross_section", &oracle_cross_section, py::arg("potential"),
        py::arg("k"), py::arg("mass"), py::arg("lmax"), py::arg("h") = 1e-3,
        "Partial-wave cross section 4 pi sum (2l+1) sin^2(delta_l) / k^2.");
  m.def("coulomb_sigma", &coulomb_sigma, py::arg("l"), py::arg("eta"),
        "Coulomb phase arg Gamma(l + 1 + i eta).");
  m.def("delta_1d_transmission", &delta_1d_transmission, py::arg("alpha"),
        py::arg("k"), py::arg("mass"),
        "1D delta-barrier closed form: returns (t, r).");

  m.def("phase_shift_error_bound", &phase_shift_error_bound, py::arg("mass"),
        py::arg("l"), py::arg("xi_inf"), py::arg("l1"),
        "|f_tilde_l - f_l| <= mass * xi_inf * l1 / (2 pi (2l+1)).");
  m.def(
      "cross_section_interval",
      [](double mass, double xi_full, double l1, double sigma_tilde) {
        CrossSectionInterval c =
            cross_section_interval(mass, xi_full, l1, sigma_tilde);
        py::dict d;
        d["lo"] = c.lo;
        d["hi"] = c.hi;
        d["half_width"] = c.half_width;
        return d;
      },
      py::arg("mass"), py::arg("xi_full"), py::arg("l1"),
      py::arg("sigma_tilde"),
      "Certified interval for the true cross section around sigma_tilde.");
  m.def("pointwise_f_bound", &pointwise_f_bound, py::arg("mass"),
        py::arg("psi_inf"), py::arg("l1"));
  m.def("free_scattering_bound", &free_scattering_bound, py::arg("mass"),
        py::arg("l1"),
        "V = 0: any claimed amplitude obeys |f_tilde| <= mass * l1 / pi.");
  m.def("xi_linf_transfer_1d", &xi_linf_transfer_1d, py::arg("v0"),
        py::arg("e"), py::arg("mass"), py::arg("l_support"), py::arg("k"),
        "Closed-form transfer envelope sqrt(1+k^2) e^{L max(2M(V0+E), 1)}.");
  m.def("gamma_star", &gamma_star, py::arg("potential"), py::arg("k"),
        py::arg("mass"),
        "Resolvent-kernel contraction constant; < 1 certifies the series.");
  m.def("amplitude_bound_from_gamma", &amplitude_bound_from_gamma,
        py::arg("gamma"), "Geometric-series amplitude bound 1/(1-gamma).");
  m.def(
      "xi_linf_numerical",
      [](const RadialPotential& p, int l, double k, double mass) {
        return xi_dict(xi_linf_numerical(p, l, k, mass));
      },
      py::arg("potential"), py::arg("l"), py::arg("k"), py::arg("mass"),
      "Numerically estimated sup of the normalized channel profile.");
  m.def(
      "xi_linf_full_state",
      [](const RadialPotential& p, double k, double mass, int lmax) {
        return xi_dict(xi_linf_full_state(p, k, mass, lmax));
      },
      py::arg("potential"), py::arg("k"), py::arg("mass"), py::arg("lmax"));

  m.def(
      "instability_scan",
      [](cplx a_lt, cplx a_gt, double k, double mass,
         const std::vector<double>& n_list) {
        py::list rows;
        for (const L2ScanRow& r : l2_instability_scan(a_lt, a_gt, k, mass,
                                                      n_list)) {
          py::dict d;
          d["n"] = r.n;
          d["l2sq_interior"] = r.l2sq_interior;
          d["l1_interior"] = r.l1_interior;
          d["kink_mass"] = r.kink_mass;
          d["flux_jump"] = r.flux_jump;
          rows.append(d);
        }
        return rows;
      },
      py::arg("a_lt"), py::arg("a_gt"), py::arg("k"), py::arg("mass"),
      py::arg("n_list"),
      "Amplitude-ramp family: L2^2 violation ~ 1/n while L1 and the flux "
      "mismatch stay fixed.");
  m.def(
      "expectation_tuning",
      [](double a_lt, double a_gt, double k, double n, double mass) {
        TuningResult t = expectation_tuning(a_lt, a_gt, k, n, mass);
        py::dict d;
        d["alpha"] = t.alpha;
        d["residual"] = t.residual;
        d["expectation"] = t.expectation;
        d["l1_interior"] = t.l1_interior;
        d["component_flux_jump"] = t.component_flux_jump;
        return d;
      },
      py::arg("a_lt"), py::arg("a_gt"), py::arg("k"), py::arg("n"),
      py::arg("mass") = 1.0,
      "Tunes the ramp rate so the expectation vanishes while the state stays "
      "wrong.");
  m.def(
      "nonconservation_demo",
      [](double eps, double a, double k, double mass) {
        NonconservationResult r = nonconservation_demo(eps, a, k, mass);
        py::dict d;
        d["l1_interior"] = r.l1_interior;
        d["kink_mass_left"] = r.kink_mass_left;
        d["kink_mass_right"] = r.kink_mass_right;
        d["current_left"] = r.current_left;
        d["current_right"] = r.current_right;
        return d;
      },
      py::arg("eps"), py::arg("a"), py::arg("k"), py::arg("mass"),
      "Violation scale eps, leaked current eps k a / mass.");
  m.def(
      "vslow_demo",
      [](double a, double eps, double e, double mass) {
        VslowResult r = vslow_demo(a, eps, e, mass);
        py::dict d;
        d["l1_measured"] = r.l1_measured;
        d["l1_predicted"] = r.l1_predicted;
        d["amp_measured"] = r.amp_measured;
        d["amp_predicted"] = r.amp_predicted;
        d["kink_contribution"] = r.kink_contribution;
        return d;
      },
      py::arg("a"), py::arg("eps"), py::arg("e") = 1.0, py::arg("mass") = 1.0,
      "Near-stopped transition state: small residual, large hidden plateau "
      "amplitude.");
  m.def(
      "inverse_square_exponents",
      [](double alpha2, double mass) {
        InverseSquareExponents r = inverse_square_exponents(alpha2, mass);
        py::dict d;
        d["beta_minus"] = r.beta_minus;
        d["beta_plus"] = r.beta_plus;
        d["pathological"] = r.pathological;
        return d;
      },
      py::arg("alpha2"), py::arg("mass") = 1.0,
      "Boundary exponents of alpha2 / r^2; complex pair flags collapse.");

  m.def(
      "solve",
      [](const std::string& config, std::optional<std::uint64_t> seed) {
        JobConfig cfg = JobConfig::parse(parse_config(config), "solve");
        if (seed) cfg.optimizer.seed = *seed;
        SolveArtifacts art = run_solve(cfg);
        py::dict d;
        d["report"] = dump_report(art.report);
        d["trace_csv"] = art.trace_csv;
        d["ansatz"] = dump_report(art.ansatz);
        d["exit_code"] = art.exit_code;
        return d;
      },
      py::arg("config"), py::arg("seed") = std::nullopt,
      "Runs the L1 minimizer from a JSON config string; returns the report, "
      "trace CSV and final ansatz exactly as the CLI writes them.");
  m.def(
      "oracle",
      [](const std::string& config, std::optional<std::uint64_t> seed) {
        JobConfig cfg = JobConfig::parse(parse_config(config), "oracle");
        if (seed) cfg.optimizer.seed = *seed;
        OracleArtifacts art = run_oracle(cfg);
        py::dict d;
        d["report"] = dump_report(art.report);
        d["csv"] = art.csv;
        return d;
      },
      py::arg("config"), py::arg("seed") = std::nullopt,
      "Reference phase shifts / cross section for a JSON config string.");
  m.def(
      "bound",
      [](const std::string& config, std::optional<std::uint64_t> seed) {
        JobConfig cfg = JobConfig::parse(parse_config(config), "bound");
        if (seed) cfg.optimizer.seed = *seed;
        return dump_report(run_bound(cfg));
      },
      py::arg("config"), py::arg("seed") = std::nullopt,
      "Evaluates the certified bounds for externally supplied norms.");
  m.def(
      "pathology",
      [](const std::string& case_name, bool scan,
         std::optional<std::uint64_t> seed) {
        PathologyArtifacts art = run_pathology(case_name, scan,
                                               seed.value_or(0),
                                               seed.has_value());
        py::dict d;
        d["table"] = art.table;
        py::dict csvs;
        for (const auto& [name, text] : art.csvs) csvs[py::str(name)] = text;
        d["csvs"] = csvs;
        d["all_pass"] = art.all_pass;
        return d;
      },
      py::arg("case_name") = "all", py::arg("scan") = false,
      py::arg("seed") = std::nullopt,
      "Runs the counterexample demos; returns the pass/fail table.");
}
