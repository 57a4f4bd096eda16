#include "scatterbound/job.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <initializer_list>
#include <limits>

#include "scatterbound/bounds.hpp"
#include "scatterbound/oracles.hpp"
#include "scatterbound/pathology.hpp"
#include "scatterbound/quadrature.hpp"
#include "scatterbound/serialize.hpp"
#include "scatterbound/special_functions.hpp"
#include "scatterbound/spline.hpp"
#include "scatterbound/violation.hpp"

namespace scatterbound {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void config_fail(const std::string& where, const std::string& what) {
  throw ConfigError("config error at " + where + ": " + what);
}

void expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) config_fail(where, "expected an object");
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (item.key() == a) {
        known = true;
        break;
      }
    }
    if (!known) config_fail(where + "/" + item.key(), "unknown key");
  }
}

double get_double(const json& j, const std::string& where, const char* key,
                  bool required, double fallback) {
  if (!j.contains(key)) {
    if (required) config_fail(where + "/" + key, "missing required number");
    return fallback;
  }
  const json& v = j.at(key);
  if (!v.is_number()) config_fail(where + "/" + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) config_fail(where + "/" + key, "must be finite");
  return x;
}

int get_int(const json& j, const std::string& where, const char* key,
            bool required, int fallback, int lo, int hi) {
  if (!j.contains(key)) {
    if (required) config_fail(where + "/" + key, "missing required integer");
    return fallback;
  }
  const json& v = j.at(key);
  if (!v.is_number_integer())
    config_fail(where + "/" + key, "expected an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi)
    config_fail(where + "/" + key,
                "must be in [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  return static_cast<int>(x);
}

std::string get_string(const json& j, const std::string& where, const char* key,
                       bool required, const std::string& fallback) {
  if (!j.contains(key)) {
    if (required) config_fail(where + "/" + key, "missing required string");
    return fallback;
  }
  const json& v = j.at(key);
  if (!v.is_string()) config_fail(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

void require_positive(double x, const std::string& where) {
  if (!(x > 0.0)) config_fail(where, "must be > 0");
}

//! Config-facing potential record: "depth"-style values are the signed
//! potential value inside the support (negative = attractive); the internal
//! record stores well depths with the opposite sign convention.
RadialPotential parse_potential(const json& j) {
  expect_object(j, "/potential");
  const std::string kind_str =
      get_string(j, "/potential", "kind", true, "");
  PotentialKind kind;
  try {
    kind = kind_from_name(kind_str);
  } catch (const std::exception&) {
    config_fail("/potential/kind", "unknown potential kind '" + kind_str + "'");
  }
  switch (kind) {
    case PotentialKind::zero:
      reject_unknown(j, "/potential", {"kind"});
      return zero_potential();
    case PotentialKind::square_well: {
      reject_unknown(j, "/potential", {"kind", "depth", "radius"});
      const double depth = get_double(j, "/potential", "depth", true, 0.0);
      const double radius = get_double(j, "/potential", "radius", true, 0.0);
      require_positive(radius, "/potential/radius");
      return square_well(-depth, radius);
    }
    case PotentialKind::gaussian:
    case PotentialKind::exponential: {
      reject_unknown(j, "/potential", {"kind", "strength", "range"});
      const double strength = get_double(j, "/potential", "strength", true, 0.0);
      const double range = get_double(j, "/potential", "range", true, 0.0);
      require_positive(range, "/potential/range");
      return kind == PotentialKind::gaussian
                 ? gaussian_potential(strength, range)
                 : exponential_potential(strength, range);
    }
    case PotentialKind::ramp_plateau: {
      reject_unknown(j, "/potential", {"kind", "ramp_length", "epsilon"});
      const double a = get_double(j, "/potential", "ramp_length", true, 0.0);
      const double eps = get_double(j, "/potential", "epsilon", true, 0.0);
      require_positive(a, "/potential/ramp_length");
      if (!(eps > 0.0 && eps <= 1.0))
        config_fail("/potential/epsilon", "must be in (0, 1]");
      return ramp_plateau(a, eps);
    }
    case PotentialKind::inverse_square_cutoff: {
      reject_unknown(j, "/potential", {"kind", "alpha2", "r_core"});
      const double alpha2 = get_double(j, "/potential", "alpha2", true, 0.0);
      const double r_core = get_double(j, "/potential", "r_core", false, 1e-3);
      require_positive(r_core, "/potential/r_core");
      return inverse_square_cutoff(alpha2, r_core);
    }
    case PotentialKind::coulomb_plus_short_range: {
      reject_unknown(j, "/potential",
                     {"kind", "alpha", "well_depth", "well_radius"});
      const double alpha = get_double(j, "/potential", "alpha", true, 0.0);
      const double wd = get_double(j, "/potential", "well_depth", false, 0.0);
      const double wr = get_double(j, "/potential", "well_radius", false, 0.0);
      if (wr < 0.0) config_fail("/potential/well_radius", "must be >= 0");
      return coulomb_plus_short_range(alpha, -wd, wr);
    }
  }
  config_fail("/potential/kind", "unknown potential kind");
}

ordered_json potential_echo(const RadialPotential& p) {
  ordered_json j;
  j["kind"] = kind_name(p.kind);
  switch (p.kind) {
    case PotentialKind::zero:
      break;
    case PotentialKind::square_well:
      j["depth"] = -p.depth;
      j["radius"] = p.radius;
      break;
    case PotentialKind::gaussian:
    case PotentialKind::exponential:
      j["strength"] = p.depth;
      j["range"] = p.radius;
      break;
    case PotentialKind::ramp_plateau:
      j["ramp_length"] = p.radius;
      j["epsilon"] = p.epsilon;
      break;
    case PotentialKind::inverse_square_cutoff:
      j["alpha2"] = p.alpha2;
      j["r_core"] = p.r_core;
      break;
    case PotentialKind::coulomb_plus_short_range:
      j["alpha"] = p.alpha;
      j["well_depth"] = -p.depth;
      j["well_radius"] = p.radius;
      break;
  }
  return j;
}

const std::initializer_list<const char*> kKnownRequests = {
    "phase-shift",       "cross-section-interval", "pointwise-amplitude",
    "free-amplitude",    "amplitude-series",       "transfer-envelope"};

bool known_request(const std::string& tag) {
  for (const char* t : kKnownRequests)
    if (tag == t) return true;
  return false;
}

bool has_request(const JobConfig& cfg, const char* tag) {
  return std::find(cfg.bound_requests.begin(), cfg.bound_requests.end(),
                   std::string(tag)) != cfg.bound_requests.end();
}

cplx unit_ipow(int l) {
  switch (l & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

//! xi choice for a single channel or for the full state, with rigor record.
struct XiChoice {
  double value = 0.0;
  std::string rigor;
  ordered_json inputs;
};

XiChoice xi_transfer(const JobConfig& cfg) {
  BoundParams bp;
  try {
    bp = bound_parameters(cfg.potential);
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("config error at /bounds/xi_source: ") +
                      ex.what());
  }
  const double e = cfg.k * cfg.k / (2.0 * cfg.mass);
  XiChoice c;
  c.value = xi_linf_transfer_1d(bp.v0, e, cfg.mass, bp.r0, cfg.k);
  c.rigor = "rigorous-formula";
  c.inputs = ordered_json{{"v0", bp.v0},
                          {"support_length", bp.r0},
                          {"energy", e},
                          {"k", cfg.k},
                          {"mass", cfg.mass}};
  return c;
}

XiChoice xi_for_channel(const JobConfig& cfg, int l) {
  if (cfg.xi_source == "fixed") {
    return {cfg.xi_value, "user-supplied",
            ordered_json{{"xi_value", cfg.xi_value}}};
  }
  if (cfg.xi_source == "transfer-1d") return xi_transfer(cfg);
  const XiEstimate est = xi_linf_numerical(cfg.potential, l, cfg.k, cfg.mass);
  return {est.value, "numerically-estimated",
          ordered_json{{"raw_max", est.raw_max}, {"safety_factor", 1.05}}};
}

XiChoice xi_for_full_state(const JobConfig& cfg) {
  if (cfg.xi_source == "fixed") {
    return {cfg.xi_value, "user-supplied",
            ordered_json{{"xi_value", cfg.xi_value}}};
  }
  if (cfg.xi_source == "transfer-1d") return xi_transfer(cfg);
  const XiEstimate est =
      xi_linf_full_state(cfg.potential, cfg.k, cfg.mass, cfg.lmax);
  return {est.value, "numerically-estimated",
          ordered_json{{"raw_max", est.raw_max}, {"safety_factor", 1.05}}};
}

//! Builds the "bounds" report array for the given residual norm; optionally
//! fills per-l phase bounds (indexed by l) for downstream comparisons.
ordered_json build_bounds(const JobConfig& cfg, double l1, double sigma_tilde,
                          double psi_inf, const std::string& psi_inf_rigor,
                          std::vector<double>* phase_bounds_out) {
  ordered_json arr = ordered_json::array();
  if (phase_bounds_out)
    phase_bounds_out->assign(static_cast<size_t>(cfg.lmax) + 1,
                             std::numeric_limits<double>::quiet_NaN());
  for (const std::string& tag : cfg.bound_requests) {
    if (tag == "phase-shift") {
      for (int l = 0; l <= cfg.lmax; ++l) {
        const XiChoice xi = xi_for_channel(cfg, l);
        const double value =
            phase_shift_error_bound(cfg.mass, l, xi.value, l1);
        if (phase_bounds_out) (*phase_bounds_out)[static_cast<size_t>(l)] = value;
        ordered_json inputs = xi.inputs;
        inputs["mass"] = cfg.mass;
        inputs["l1"] = l1;
        inputs["l"] = l;
        arr.push_back(ordered_json{{"theorem", "phase-shift"},
                                   {"l", l},
                                   {"value", value},
                                   {"xi_inf", xi.value},
                                   {"rigor", xi.rigor},
                                   {"inputs", inputs}});
      }
    } else if (tag == "cross-section-interval") {
      if (sigma_tilde < 0.0)
        config_fail("/bounds/sigma_tilde",
                    "required for the cross-section-interval request");
      const XiChoice xi = xi_for_full_state(cfg);
      const CrossSectionInterval ci =
          cross_section_interval(cfg.mass, xi.value, l1, sigma_tilde);
      ordered_json inputs = xi.inputs;
      inputs["mass"] = cfg.mass;
      inputs["l1"] = l1;
      inputs["sigma_tilde"] = sigma_tilde;
      arr.push_back(ordered_json{
          {"theorem", "cross-section-interval"},
          {"value", ordered_json{{"lo", ci.lo},
                                 {"hi", ci.hi},
                                 {"half_width", ci.half_width}}},
          {"xi_inf", xi.value},
          {"rigor", xi.rigor},
          {"inputs", inputs}});
    } else if (tag == "pointwise-amplitude") {
      if (psi_inf < 0.0)
        config_fail("/bounds/psi_inf",
                    "required for the pointwise-amplitude request");
      const double value = pointwise_f_bound(cfg.mass, psi_inf, l1);
      arr.push_back(ordered_json{
          {"theorem", "pointwise-amplitude"},
          {"value", value},
          {"xi_inf", psi_inf},
          {"rigor", psi_inf_rigor},
          {"inputs", ordered_json{{"psi_inf", psi_inf},
                                  {"mass", cfg.mass},
                                  {"l1", l1}}}});
    } else if (tag == "free-amplitude") {
      const double value = free_scattering_bound(cfg.mass, l1);
      arr.push_back(ordered_json{
          {"theorem", "free-amplitude"},
          {"value", value},
          {"rigor", "rigorous-formula"},
          {"inputs", ordered_json{{"mass", cfg.mass},
                                  {"l1", l1},
                                  {"applies_to", "zero potential"}}}});
    } else if (tag == "amplitude-series") {
      double gamma = 0.0;
      try {
        gamma = gamma_star(cfg.potential, cfg.k, cfg.mass);
      } catch (const std::exception& ex) {
        throw ConfigError(
            std::string("config error at /bounds/requests: amplitude-series: ") +
            ex.what());
      }
      ordered_json entry{{"theorem", "amplitude-series"}};
      if (gamma < 1.0) {
        entry["value"] = amplitude_bound_from_gamma(gamma);
      } else {
        entry["value"] = nullptr;
        entry["note"] = "series does not close (gamma_star >= 1)";
      }
      entry["rigor"] = "rigorous-formula";
      entry["inputs"] = ordered_json{{"gamma_star", gamma},
                                     {"mass", cfg.mass},
                                     {"k", cfg.k}};
      arr.push_back(entry);
    } else if (tag == "transfer-envelope") {
      const XiChoice xi = xi_transfer(cfg);
      ordered_json entry{{"theorem", "transfer-envelope"},
                         {"value", xi.value},
                         {"rigor", xi.rigor},
                         {"inputs", xi.inputs}};
      arr.push_back(entry);
    }
  }
  return arr;
}

ordered_json physics_echo(const JobConfig& cfg) {
  const double e = cfg.k * cfg.k / (2.0 * cfg.mass);
  return ordered_json{{"k", cfg.k},
                      {"mass", cfg.mass},
                      {"energy", e},
                      {"lmax", cfg.lmax},
                      {"eta", cfg.mass * cfg.potential.alpha / cfg.k}};
}

std::string format_csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

JobConfig JobConfig::parse(const json& j, const std::string& command) {
  if (command != "solve" && command != "oracle" && command != "bound")
    throw std::logic_error("JobConfig::parse: unknown command " + command);
  expect_object(j, "/");
  reject_unknown(j, "", {"potential", "physics", "ansatz", "optimizer",
                         "bounds", "output"});

  JobConfig cfg;
  if (!j.contains("potential"))
    config_fail("/potential", "missing required object");
  cfg.potential = parse_potential(j.at("potential"));

  if (!j.contains("physics")) config_fail("/physics", "missing required object");
  const json& ph = j.at("physics");
  expect_object(ph, "/physics");
  reject_unknown(ph, "/physics", {"k", "mass", "lmax"});
  cfg.k = get_double(ph, "/physics", "k", true, 0.0);
  require_positive(cfg.k, "/physics/k");
  cfg.mass = get_double(ph, "/physics", "mass", false, 1.0);
  require_positive(cfg.mass, "/physics/mass");
  cfg.lmax = get_int(ph, "/physics", "lmax", false, 0, 0, 20);

  if (j.contains("ansatz")) {
    const json& an = j.at("ansatz");
    expect_object(an, "/ansatz");
    reject_unknown(an, "/ansatz",
                   {"grid_nodes", "r_grid", "window_scale", "start"});
    cfg.grid_nodes = get_int(an, "/ansatz", "grid_nodes", false, 128, 8, 4096);
    cfg.r_grid = get_double(an, "/ansatz", "r_grid", false, 0.0);
    if (an.contains("r_grid")) require_positive(cfg.r_grid, "/ansatz/r_grid");
    cfg.window_scale = get_double(an, "/ansatz", "window_scale", false, 0.0);
    if (an.contains("window_scale"))
      require_positive(cfg.window_scale, "/ansatz/window_scale");
    cfg.start = get_string(an, "/ansatz", "start", false, "zero");
    if (cfg.start != "zero" && cfg.start != "oracle")
      config_fail("/ansatz/start", "must be \"zero\" or \"oracle\"");
  }

  if (j.contains("optimizer")) {
    const json& op = j.at("optimizer");
    expect_object(op, "/optimizer");
    reject_unknown(op, "/optimizer",
                   {"max_iters", "loss_tol", "step_tol", "fd_step",
                    "smoothing_delta", "radial_panels", "panel_order",
                    "angular_nodes", "seed"});
    OptimizerConfig& oc = cfg.optimizer;
    oc.max_iters = get_int(op, "/optimizer", "max_iters", false, oc.max_iters,
                           0, 100000);
    oc.loss_tol = get_double(op, "/optimizer", "loss_tol", false, oc.loss_tol);
    require_positive(oc.loss_tol, "/optimizer/loss_tol");
    oc.step_tol = get_double(op, "/optimizer", "step_tol", false, oc.step_tol);
    if (oc.step_tol < 0.0) config_fail("/optimizer/step_tol", "must be >= 0");
    oc.fd_step = get_double(op, "/optimizer", "fd_step", false, oc.fd_step);
    require_positive(oc.fd_step, "/optimizer/fd_step");
    oc.smoothing_delta =
        get_double(op, "/optimizer", "smoothing_delta", false, oc.smoothing_delta);
    if (oc.smoothing_delta < 0.0)
      config_fail("/optimizer/smoothing_delta", "must be >= 0");
    oc.radial_panels = get_int(op, "/optimizer", "radial_panels", false,
                               oc.radial_panels, 2, 4096);
    oc.panel_order =
        get_int(op, "/optimizer", "panel_order", false, oc.panel_order, 2, 16);
    oc.angular_nodes = get_int(op, "/optimizer", "angular_nodes", false,
                               oc.angular_nodes, 4, 512);
    if (op.contains("seed")) {
      const json& s = op.at("seed");
      if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() &&
                                     s.get<long long>() < 0))
        config_fail("/optimizer/seed", "expected a non-negative integer");
      cfg.optimizer.seed = s.get<std::uint64_t>();
    }
  }

  // Default bound requests; the zero potential also gets its exact
  // free-amplitude corollary automatically.
  cfg.bound_requests = {"phase-shift", "cross-section-interval",
                        "pointwise-amplitude"};
  if (cfg.potential.kind == PotentialKind::zero)
    cfg.bound_requests.push_back("free-amplitude");

  if (j.contains("bounds")) {
    const json& b = j.at("bounds");
    expect_object(b, "/bounds");
    reject_unknown(b, "/bounds", {"requests", "xi_source", "xi_value", "l1",
                                  "sigma_tilde", "psi_inf"});
    if (b.contains("requests")) {
      const json& reqs = b.at("requests");
      if (!reqs.is_array()) config_fail("/bounds/requests", "expected an array");
      cfg.bound_requests.clear();
      for (size_t i = 0; i < reqs.size(); ++i) {
        if (!reqs[i].is_string())
          config_fail("/bounds/requests/" + std::to_string(i),
                      "expected a string");
        const std::string tag = reqs[i].get<std::string>();
        if (!known_request(tag))
          config_fail("/bounds/requests/" + std::to_string(i),
                      "unknown theorem tag '" + tag + "'");
        if (std::find(cfg.bound_requests.begin(), cfg.bound_requests.end(),
                      tag) != cfg.bound_requests.end())
          config_fail("/bounds/requests/" + std::to_string(i),
                      "duplicate theorem tag '" + tag + "'");
        cfg.bound_requests.push_back(tag);
      }
    }
    cfg.xi_source = get_string(b, "/bounds", "xi_source", false, "numerical");
    if (cfg.xi_source != "numerical" && cfg.xi_source != "transfer-1d" &&
        cfg.xi_source != "fixed")
      config_fail("/bounds/xi_source",
                  "must be \"numerical\", \"transfer-1d\" or \"fixed\"");
    if (b.contains("xi_value")) {
      if (cfg.xi_source != "fixed")
        config_fail("/bounds/xi_value",
                    "only allowed with xi_source = \"fixed\"");
      cfg.xi_value = get_double(b, "/bounds", "xi_value", true, 0.0);
      require_positive(cfg.xi_value, "/bounds/xi_value");
    } else if (cfg.xi_source == "fixed") {
      config_fail("/bounds/xi_value", "required when xi_source = \"fixed\"");
    }
    cfg.bound_l1 = get_double(b, "/bounds", "l1", false, -1.0);
    if (b.contains("l1") && cfg.bound_l1 < 0.0)
      config_fail("/bounds/l1", "must be >= 0");
    cfg.bound_sigma_tilde = get_double(b, "/bounds", "sigma_tilde", false, -1.0);
    if (b.contains("sigma_tilde") && cfg.bound_sigma_tilde < 0.0)
      config_fail("/bounds/sigma_tilde", "must be >= 0");
    cfg.bound_psi_inf = get_double(b, "/bounds", "psi_inf", false, -1.0);
    if (b.contains("psi_inf")) require_positive(cfg.bound_psi_inf, "/bounds/psi_inf");
  }

  if (j.contains("output")) {
    const json& out = j.at("output");
    expect_object(out, "/output");
    reject_unknown(out, "/output", {"dir"});
    cfg.out_dir = get_string(out, "/output", "dir", false, "");
  }

  // Command-specific feasibility checks.
  const PotentialKind kind = cfg.potential.kind;
  if (command == "solve" || command == "oracle") {
    if (kind == PotentialKind::coulomb_plus_short_range)
      config_fail("/potential/kind",
                  command + " requires a short-range potential (the Coulomb "
                            "tail admits phase calculations only)");
    if (kind == PotentialKind::inverse_square_cutoff)
      config_fail("/potential/kind",
                  command + " requires a potential with an integrable residual "
                            "norm (the inverse-square tail has none)");
  }
  if (command == "bound") {
    if (cfg.bound_l1 < 0.0)
      config_fail("/bounds/l1", "the bound command needs the measured "
                                "residual norm as input");
    if (has_request(cfg, "cross-section-interval") && cfg.bound_sigma_tilde < 0.0)
      config_fail("/bounds/sigma_tilde",
                  "required for the cross-section-interval request");
    if (has_request(cfg, "pointwise-amplitude") && cfg.bound_psi_inf < 0.0)
      config_fail("/bounds/psi_inf",
                  "required for the pointwise-amplitude request");
    if (cfg.xi_source == "numerical" &&
        (kind == PotentialKind::coulomb_plus_short_range ||
         kind == PotentialKind::inverse_square_cutoff) &&
        (has_request(cfg, "phase-shift") ||
         has_request(cfg, "cross-section-interval")))
      config_fail("/bounds/xi_source",
                  "numerical xi estimation needs a short-range potential; "
                  "use xi_source = \"fixed\"");
  }
  return cfg;
}

double effective_r_grid(const JobConfig& cfg) {
  if (cfg.r_grid > 0.0) return cfg.r_grid;
  double r0 = 0.0;
  if (cfg.potential.kind != PotentialKind::zero)
    r0 = bound_parameters(cfg.potential).r0;
  return r0 + 10.0 / cfg.k;
}

double effective_window_scale(const JobConfig& cfg) {
  return cfg.window_scale > 0.0 ? cfg.window_scale : 1.0 / cfg.k;
}

std::vector<double> ansatz_grid(const RadialPotential& p, double r_grid,
                                int grid_nodes) {
  std::vector<double> g = geometric_grid(r_grid, grid_nodes);
  double rj = 0.0;
  if (p.kind == PotentialKind::square_well) rj = p.radius;
  if (rj <= 0.0) return g;
  const auto it = std::upper_bound(g.begin(), g.end(), rj);
  if (it == g.begin() || it == g.end()) return g;
  const double h_loc = *it - *(it - 1);
  if (rj - 1.5 * h_loc <= 0.0 || rj + 1.5 * h_loc >= r_grid) return g;
  // Dyadic cluster spanning [rj - h_loc, rj + h_loc] with innermost spacing
  // ~h_loc/n; base nodes inside the cluster's reach are dropped first.
  const int levels =
      static_cast<int>(std::ceil(std::log2(static_cast<double>(grid_nodes))));
  std::vector<double> out;
  out.reserve(g.size() + 2 * static_cast<std::size_t>(levels) + 3);
  for (double r : g)
    if (std::abs(r - rj) >= 1.5 * h_loc) out.push_back(r);
  out.push_back(rj);
  for (int j = 0; j <= levels; ++j) {
    const double off = h_loc / static_cast<double>(std::int64_t{1} << j);
    out.push_back(rj - off);
    out.push_back(rj + off);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ScatteringAnsatz zero_ansatz(const RadialPotential& p, double k, double mass,
                             int lmax, int grid_nodes, double r_grid,
                             double window_scale, double alpha) {
  return ScatteringAnsatz::make(k, mass, lmax,
                                ansatz_grid(p, r_grid, grid_nodes),
                                window_scale, alpha);
}

ScatteringAnsatz oracle_resampled_ansatz(const RadialPotential& p, double k,
                                         double mass, int lmax, int grid_nodes,
                                         double r_grid, double window_scale) {
  ScatteringAnsatz a = zero_ansatz(p, k, mass, lmax, grid_nodes, r_grid,
                                   window_scale, 0.0);
  std::vector<std::vector<cplx>> u(static_cast<size_t>(lmax) + 1);
  std::vector<cplx> f(static_cast<size_t>(lmax) + 1);
  const double rj = p.kind == PotentialKind::square_well ? p.radius : 0.0;
  for (int l = 0; l <= lmax; ++l) {
    const RadialSolution sol = numerov_radial_solution(p, l, k, mass);
    const double delta = sol.delta;
    const cplx phase(std::cos(delta), std::sin(delta));
    f[static_cast<size_t>(l)] = phase * std::sin(delta) / k;
    std::vector<cplx> wf(sol.w.size());
    for (size_t i = 0; i < sol.w.size(); ++i) wf[i] = cplx(sol.w[i], 0.0);
    // A potential jump kinks the curvature of the reference wave; a single C2
    // spline across it would smooth the kink over one oracle step and the
    // resample would inherit that error at any target resolution.  The jump
    // radius lands on a march node, so interpolate each side separately: the
    // shared node keeps the value exactly continuous and each piece is smooth.
    std::vector<CubicSpline> parts;
    size_t js = 0;
    if (rj > 0.0 && sol.r.size() > 1) {
      const auto jt = std::lower_bound(sol.r.begin(), sol.r.end(), rj);
      size_t cand = static_cast<size_t>(jt - sol.r.begin());
      if (cand == sol.r.size()) --cand;
      if (cand > 0 && rj - sol.r[cand - 1] < sol.r[cand] - rj) --cand;
      if (std::abs(sol.r[cand] - rj) <= 0.25 * (sol.r[1] - sol.r[0]))
        js = cand;
    }
    if (js >= 5 && js + 5 <= sol.r.size()) {
      // The march samples the averaged potential at the jump node, so that
      // one sample threads between the one-sided branches.  Extrapolate each
      // smooth branch to the jump, rescale the interior piece (the regular
      // interior solution is defined up to amplitude) and splice with exact
      // value continuity.
      auto branch_at_jump = [&](long first, long step) {
        double xs[4], ys[4];
        for (int m = 0; m < 4; ++m) {
          xs[m] = sol.r[static_cast<size_t>(first + m * step)];
          ys[m] = sol.w[static_cast<size_t>(first + m * step)];
        }
        double acc = 0.0;
        for (int m = 0; m < 4; ++m) {
          double term = ys[m];
          for (int q2 = 0; q2 < 4; ++q2)
            if (q2 != m) term *= (rj - xs[q2]) / (xs[m] - xs[q2]);
          acc += term;
        }
        return acc;
      };
      const double in_val = branch_at_jump(static_cast<long>(js) - 4, 1);
      const double out_val = branch_at_jump(static_cast<long>(js) + 4, -1);
      const double scale =
          std::abs(in_val) > 1e-12 * std::abs(out_val) ? out_val / in_val : 1.0;
      for (size_t i = 0; i < js; ++i) wf[i] *= scale;
      wf[js] = cplx(out_val, 0.0);
      parts.emplace_back(
          std::vector<double>(sol.r.begin(), sol.r.begin() + js + 1),
          std::vector<cplx>(wf.begin(), wf.begin() + js + 1));
      parts.emplace_back(std::vector<double>(sol.r.begin() + js, sol.r.end()),
                         std::vector<cplx>(wf.begin() + js, wf.end()));
    } else {
      parts.emplace_back(sol.r, std::move(wf));
    }
    const double r_lo = sol.r.front(), r_hi = sol.r.back();
    auto spline_value = [&](double r) -> double {
      if (parts.size() == 2 && r >= rj) return parts[1].value(r).real();
      return parts[0].value(r).real();
    };
    auto reduced_wave = [&](double r) -> double {
      if (r <= r_hi && r >= r_lo) return spline_value(r);
      // Below the oracle's start radius only the regular solution survives:
      // scale its r^{l+1} behavior off the first oracle sample.
      if (r < r_lo)
        return spline_value(r_lo) * std::pow(r / r_lo, l + 1);
      // Beyond the integration range the potential is below the truncation
      // tolerance, so the exact free exterior solution applies (it tends to
      // sin(kr - l pi/2 + delta), but the Bessel form is exact at finite r).
      return k * r *
             (std::cos(delta) * sph_bessel_j(l, k * r) -
              std::sin(delta) * sph_bessel_y(l, k * r));
    };
    std::vector<cplx>& ul = u[static_cast<size_t>(l)];
    ul.assign(a.grid.size(), cplx(0.0, 0.0));
    for (size_t i = 1; i + 1 < a.grid.size(); ++i) {
      const double r = a.grid[i];
      const double radial = reduced_wave(r) / (k * r);
      const cplx full = unit_ipow(l) * (phase * radial - sph_bessel_j(l, k * r));
      const WindowEval win = window_eval(r, window_scale, l);
      const OutWave ow = out_radial_wave(l, k, 0.0, r);
      ul[i] = r * full - f[static_cast<size_t>(l)] * win.w * ow.v;
    }
  }
  a.set_channels(std::move(u), std::move(f));
  return a;
}

SolveArtifacts run_solve(const JobConfig& cfg) {
  const double rg = effective_r_grid(cfg);
  const double ws = effective_window_scale(cfg);
  const ScatteringAnsatz a0 =
      cfg.start == "oracle"
          ? oracle_resampled_ansatz(cfg.potential, cfg.k, cfg.mass, cfg.lmax,
                                    cfg.grid_nodes, rg, ws)
          : zero_ansatz(cfg.potential, cfg.k, cfg.mass, cfg.lmax,
                        cfg.grid_nodes, rg, ws);

  const OptimizationResult opt = optimize(cfg.potential, a0, cfg.optimizer);
  const ViolationReport vr =
      violation_report(cfg.potential, opt.ansatz, cfg.optimizer.radial_panels,
                       cfg.optimizer.panel_order, cfg.optimizer.angular_nodes);

  const AsymptoticForm form{opt.ansatz.f, opt.ansatz.eta};
  const double sigma_tilde = cross_section(form);

  // Numerical sup of the trial state over the quadrature mesh (pointwise
  // stability input); carries the same sampling safety factor as the xi
  // estimators.
  const RadialAngularMesh mesh =
      make_mesh(rg, cfg.optimizer.radial_panels, cfg.optimizer.panel_order,
                cfg.optimizer.angular_nodes);
  double psi_raw = 0.0;
  for (size_t ir = 0; ir < mesh.r.size(); ++ir)
    for (size_t iu = 0; iu < mesh.u.size(); ++iu)
      psi_raw = std::max(psi_raw,
                         std::abs(assemble(opt.ansatz, mesh.r[ir], mesh.u[iu])));
  const double psi_inf = 1.05 * psi_raw;

  std::vector<double> phase_bounds;
  const ordered_json bounds =
      build_bounds(cfg, vr.l1, sigma_tilde, psi_inf,
                   "numerically-estimated", &phase_bounds);

  // Reference comparison (every solve-able potential admits the oracle).
  ordered_json oracle_rows = ordered_json::array();
  ordered_json amp_errors = ordered_json::array();
  double sigma_oracle = 0.0;
  for (int l = 0; l <= cfg.lmax; ++l) {
    const PhaseShiftResult ps =
        numerov_phase_shift(cfg.potential, l, cfg.k, cfg.mass);
    sigma_oracle += 4.0 * M_PI * (2.0 * l + 1.0) * std::sin(ps.delta) *
                    std::sin(ps.delta) / (cfg.k * cfg.k);
    oracle_rows.push_back(
        ordered_json{{"l", l},
                     {"delta", ps.delta},
                     {"f", {ps.f_l.real(), ps.f_l.imag()}},
                     {"convergence", ps.convergence}});
    const cplx f_trial = opt.ansatz.f[static_cast<size_t>(l)];
    ordered_json err{{"l", l},
                     {"actual", std::abs(f_trial - ps.f_l)}};
    if (!phase_bounds.empty() &&
        std::isfinite(phase_bounds[static_cast<size_t>(l)]))
      err["bound"] = phase_bounds[static_cast<size_t>(l)];
    amp_errors.push_back(err);
  }

  ordered_json amplitudes = ordered_json::array();
  for (int l = 0; l <= cfg.lmax; ++l) {
    const cplx fl = opt.ansatz.f[static_cast<size_t>(l)];
    const cplx s = 1.0 + 2.0 * cplx(0.0, 1.0) * cfg.k * fl;
    amplitudes.push_back(ordered_json{
        {"l", l},
        {"f", {fl.real(), fl.imag()}},
        {"abs", std::abs(fl)},
        {"phase_shift_estimate", 0.5 * std::arg(s)}});
  }

  ordered_json report;
  report["format"] = "scatterbound-report";
  report["version"] = 1;
  report["command"] = "solve";
  report["seed"] = cfg.optimizer.seed;
  report["potential"] = potential_echo(cfg.potential);
  report["physics"] = physics_echo(cfg);
  report["ansatz"] = ordered_json{{"grid_nodes", cfg.grid_nodes},
                                  {"r_grid", rg},
                                  {"window_scale", ws},
                                  {"start", cfg.start}};
  report["optimizer"] =
      ordered_json{{"max_iters", cfg.optimizer.max_iters},
                   {"loss_tol", cfg.optimizer.loss_tol},
                   {"step_tol", cfg.optimizer.step_tol},
                   {"fd_step", cfg.optimizer.fd_step},
                   {"smoothing_delta", cfg.optimizer.smoothing_delta},
                   {"iterations", opt.iterations},
                   {"converged", opt.converged},
                   {"line_search_failed", opt.line_search_failed},
                   {"final_loss", opt.final_loss}};
  report["violation"] =
      ordered_json{{"l1", vr.l1},
                   {"l1_error", vr.l1_error},
                   {"l2sq", vr.l2sq},
                   {"l2sq_error", vr.l2sq_error},
                   {"flux_in", vr.flux_in},
                   {"flux_out", vr.flux_out},
                   {"flux_net", vr.flux_net},
                   {"flux_error", vr.flux_error},
                   {"quadrature", ordered_json{{"radial_panels", vr.radial_panels},
                                               {"panel_order", vr.panel_order},
                                               {"angular_nodes", vr.angular_nodes}}}};
  report["amplitudes"] = amplitudes;
  report["cross_section"] =
      ordered_json{{"value", sigma_tilde},
                   {"convention", "sigma = 4 pi sum (2l+1) |f_l|^2"}};
  report["bounds"] = bounds;
  report["oracle"] = ordered_json{{"rows", oracle_rows},
                                  {"cross_section", sigma_oracle},
                                  {"amplitude_errors", amp_errors}};

  SolveArtifacts art;
  art.report = std::move(report);
  art.trace_csv = trace_to_csv(opt.trace);
  art.ansatz = ansatz_to_json(opt.ansatz);
  art.exit_code = opt.line_search_failed ? 2 : 0;
  return art;
}

OracleArtifacts run_oracle(const JobConfig& cfg) {
  ordered_json rows = ordered_json::array();
  std::string csv = "l,delta,f_re,f_im,matching_radius,step,convergence\n";
  double sigma = 0.0;
  for (int l = 0; l <= cfg.lmax; ++l) {
    const PhaseShiftResult ps =
        numerov_phase_shift(cfg.potential, l, cfg.k, cfg.mass);
    sigma += 4.0 * M_PI * (2.0 * l + 1.0) * std::sin(ps.delta) *
             std::sin(ps.delta) / (cfg.k * cfg.k);
    rows.push_back(ordered_json{{"l", l},
                                {"delta", ps.delta},
                                {"f", {ps.f_l.real(), ps.f_l.imag()}},
                                {"matching_radius", ps.matching_radius},
                                {"step", ps.step},
                                {"convergence", ps.convergence}});
    csv += std::to_string(l) + "," + format_csv_double(ps.delta) + "," +
           format_csv_double(ps.f_l.real()) + "," +
           format_csv_double(ps.f_l.imag()) + "," +
           format_csv_double(ps.matching_radius) + "," +
           format_csv_double(ps.step) + "," +
           format_csv_double(ps.convergence) + "\n";
  }

  ordered_json report;
  report["format"] = "scatterbound-report";
  report["version"] = 1;
  report["command"] = "oracle";
  report["seed"] = cfg.optimizer.seed;
  report["potential"] = potential_echo(cfg.potential);
  report["physics"] = physics_echo(cfg);
  report["rows"] = rows;
  report["cross_section"] = sigma;

  OracleArtifacts art;
  art.report = std::move(report);
  art.csv = std::move(csv);
  return art;
}

ordered_json run_bound(const JobConfig& cfg) {
  const ordered_json bounds =
      build_bounds(cfg, cfg.bound_l1, cfg.bound_sigma_tilde, cfg.bound_psi_inf,
                   "user-supplied", nullptr);
  ordered_json inputs{{"l1", cfg.bound_l1}};
  if (cfg.bound_sigma_tilde >= 0.0) inputs["sigma_tilde"] = cfg.bound_sigma_tilde;
  if (cfg.bound_psi_inf >= 0.0) inputs["psi_inf"] = cfg.bound_psi_inf;

  ordered_json report;
  report["format"] = "scatterbound-report";
  report["version"] = 1;
  report["command"] = "bound";
  report["seed"] = cfg.optimizer.seed;
  report["potential"] = potential_echo(cfg.potential);
  report["physics"] = physics_echo(cfg);
  report["inputs"] = inputs;
  report["bounds"] = bounds;
  return report;
}

namespace {

std::string format_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void table_row(std::string& out, bool& all_pass, const std::string& name,
               const std::string& measured, const std::string& predicted,
               const std::string& tol, bool pass) {
  char buf[200];
  std::snprintf(buf, sizeof(buf), "  %-34s %-16s %-16s %-10s %s\n",
                name.c_str(), measured.c_str(), predicted.c_str(), tol.c_str(),
                pass ? "PASS" : "FAIL");
  out += buf;
  if (!pass) all_pass = false;
}

bool within_rel(double measured, double predicted, double rel) {
  return std::abs(measured - predicted) <= rel * std::abs(predicted);
}

}  // namespace

PathologyArtifacts run_pathology(const std::string& case_name, bool scan,
                                 std::uint64_t seed, bool seed_given) {
  const bool all = case_name == "all";
  if (!all && case_name != "instability" && case_name != "tuning" &&
      case_name != "nonconservation" && case_name != "vslow" &&
      case_name != "inverse-square")
    throw ConfigError("unknown pathology case '" + case_name +
                      "' (expected all, instability, tuning, nonconservation, "
                      "vslow or inverse-square)");

  PathologyArtifacts art;
  std::string& t = art.table;
  if (seed_given) t += "# seed " + std::to_string(seed) + "\n";
  t += "counterexample demos (measured vs predicted)\n";
  const char* header =
      "  check                              measured         predicted        tol        status\n";

  if (all || case_name == "instability") {
    t += "\n[amplitude-ramp instability]  A_<=0, A_>=1, k=1, M=1\n";
    t += header;
    const std::vector<double> n_list{100.0, 200.0, 400.0};
    const auto rows = l2_instability_scan(cplx(0.0, 0.0), cplx(1.0, 0.0), 1.0,
                                          1.0, n_list);
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
      const double ratio = rows[i + 1].l2sq_interior / rows[i].l2sq_interior;
      table_row(t, art.all_pass,
                "l2sq(" + std::to_string(static_cast<int>(rows[i + 1].n)) +
                    ")/l2sq(" + std::to_string(static_cast<int>(rows[i].n)) + ")",
                format_cell(ratio), "0.5", "2%",
                std::abs(ratio - 0.5) <= 0.02);
    }
    double flux_spread = 0.0, l1_spread = 0.0;
    for (const auto& row : rows) {
      flux_spread = std::max(flux_spread,
                             std::abs(row.flux_jump - rows[0].flux_jump));
      l1_spread = std::max(l1_spread,
                           std::abs(row.l1_interior - rows[0].l1_interior));
    }
    table_row(t, art.all_pass, "flux jump spread over n", format_cell(flux_spread),
              "0", "1e-10", flux_spread <= 1e-10);
    table_row(t, art.all_pass, "flux jump value", format_cell(rows[0].flux_jump),
              "1", "1e-10", std::abs(rows[0].flux_jump - 1.0) <= 1e-10);
    table_row(t, art.all_pass, "interior l1 spread over n", format_cell(l1_spread),
              "0", "1e-10", l1_spread <= 1e-10);
    if (scan) {
      std::string csv = "n,l2sq_interior,l1_interior,kink_mass,flux_jump\n";
      std::vector<double> ns;
      for (double n = 100.0; n <= 6400.0; n *= 2.0) ns.push_back(n);
      for (const auto& row : l2_instability_scan(cplx(0.0, 0.0), cplx(1.0, 0.0),
                                                 1.0, 1.0, ns)) {
        csv += format_csv_double(row.n) + "," +
               format_csv_double(row.l2sq_interior) + "," +
               format_csv_double(row.l1_interior) + "," +
               format_csv_double(row.kink_mass) + "," +
               format_csv_double(row.flux_jump) + "\n";
      }
      art.csvs["instability_scan.csv"] = csv;
    }
  }

  if (all || case_name == "tuning") {
    t += "\n[expectation tuning]  A_<=1, A_>=2, k=1, n=100, M=1\n";
    t += header;
    const TuningResult tr = expectation_tuning(1.0, 2.0, 1.0, 100.0, 1.0);
    table_row(t, art.all_pass, "tuned ramp rate alpha", format_cell(tr.alpha),
              "(0.1, 10)", "-", tr.alpha > 0.1 && tr.alpha < 10.0);
    table_row(t, art.all_pass, "expectation residual", format_cell(tr.residual),
              "0", "1e-10", std::abs(tr.residual) < 1e-10);
    table_row(t, art.all_pass, "interior l1 stays finite",
              format_cell(tr.l1_interior), "> 0.1", "-",
              tr.l1_interior > 0.1);
    table_row(t, art.all_pass, "component flux jump",
              format_cell(tr.component_flux_jump), "0.75", "1e-12",
              std::abs(tr.component_flux_jump - 0.75) <= 1e-12);
    if (scan) {
      std::string csv = "n,alpha,residual,l1_interior,component_flux_jump\n";
      for (double n : {20.0, 50.0, 100.0, 200.0, 500.0}) {
        const TuningResult row = expectation_tuning(1.0, 2.0, 1.0, n, 1.0);
        csv += format_csv_double(n) + "," + format_csv_double(row.alpha) + "," +
               format_csv_double(row.residual) + "," +
               format_csv_double(row.l1_interior) + "," +
               format_csv_double(row.component_flux_jump) + "\n";
      }
      art.csvs["tuning_scan.csv"] = csv;
    }
  }

  if (all || case_name == "nonconservation") {
    t += "\n[probability nonconservation]  eps=0.1, A=10, k=1, M=1\n";
    t += header;
    const NonconservationResult nc = nonconservation_demo(0.1, 10.0, 1.0, 1.0);
    const NonconservationResult nc2 = nonconservation_demo(0.2, 10.0, 1.0, 1.0);
    table_row(t, art.all_pass, "leaked current (x > 1)",
              format_cell(nc.current_right), "1", "1e-12",
              std::abs(nc.current_right - 1.0) <= 1e-12);
    table_row(t, art.all_pass, "current (x < 0)", format_cell(nc.current_left),
              "0", "1e-15", std::abs(nc.current_left) <= 1e-15);
    const double l1_ratio = nc.l1_interior / nc2.l1_interior;
    table_row(t, art.all_pass, "l1(eps)/l1(2 eps)", format_cell(l1_ratio), "0.5",
              "1%", within_rel(l1_ratio, 0.5, 0.01));
    if (scan) {
      std::string csv =
          "eps,l1_interior,kink_mass_left,kink_mass_right,current_right\n";
      for (double eps : {0.4, 0.2, 0.1, 0.05, 0.025, 0.0125}) {
        const NonconservationResult row =
            nonconservation_demo(eps, 10.0, 1.0, 1.0);
        csv += format_csv_double(eps) + "," +
               format_csv_double(row.l1_interior) + "," +
               format_csv_double(row.kink_mass_left) + "," +
               format_csv_double(row.kink_mass_right) + "," +
               format_csv_double(row.current_right) + "\n";
      }
      art.csvs["nonconservation_scan.csv"] = csv;
    }
  }

  if (all || case_name == "vslow") {
    t += "\n[slow-ramp amplification]  E=1, eps=1e-4, a=1e4, M=1\n";
    t += header;
    const VslowResult vs = vslow_demo(1e4, 1e-4, 1.0, 1.0);
    table_row(t, art.all_pass, "interior l1", format_cell(vs.l1_measured),
              format_cell(vs.l1_predicted), "3%",
              within_rel(vs.l1_measured, vs.l1_predicted, 0.03));
    table_row(t, art.all_pass, "plateau amplitude", format_cell(vs.amp_measured),
              format_cell(vs.amp_predicted), "5%",
              within_rel(vs.amp_measured, vs.amp_predicted, 0.05));
    const VslowResult vs2 = vslow_demo(2e4, 1e-4, 1.0, 1.0);
    const double kink_ratio = vs2.kink_contribution / vs.kink_contribution;
    table_row(t, art.all_pass, "kink mass ratio (2a : a)",
              format_cell(kink_ratio), "0.5", "5%",
              within_rel(kink_ratio, 0.5, 0.05));
    if (scan) {
      std::string csv =
          "a,l1_measured,l1_predicted,amp_measured,amp_predicted,"
          "kink_contribution\n";
      for (double a : {2e3, 5e3, 1e4, 2e4, 4e4}) {
        const VslowResult row = vslow_demo(a, 1e-4, 1.0, 1.0);
        csv += format_csv_double(a) + "," + format_csv_double(row.l1_measured) +
               "," + format_csv_double(row.l1_predicted) + "," +
               format_csv_double(row.amp_measured) + "," +
               format_csv_double(row.amp_predicted) + "," +
               format_csv_double(row.kink_contribution) + "\n";
      }
      art.csvs["vslow_scan.csv"] = csv;
    }
  }

  if (all || case_name == "inverse-square") {
    t += "\n[inverse-square collapse]\n";
    t += header;
    const InverseSquareExponents e1 = inverse_square_exponents(1.0, 1.0);
    table_row(t, art.all_pass, "exponents at alpha2=1",
              "(" + format_cell(e1.beta_minus.real()) + ", " +
                  format_cell(e1.beta_plus.real()) + ")",
              "(-1, 2)", "1e-12",
              std::abs(e1.beta_minus - cplx(-1.0, 0.0)) <= 1e-12 &&
                  std::abs(e1.beta_plus - cplx(2.0, 0.0)) <= 1e-12);
    const InverseSquareExponents e0 = inverse_square_exponents(0.0, 1.0);
    table_row(t, art.all_pass, "exponents at alpha2=0",
              "(" + format_cell(e0.beta_minus.real()) + ", " +
                  format_cell(e0.beta_plus.real()) + ")",
              "(0, 1)", "exact",
              e0.beta_minus == cplx(0.0, 0.0) && e0.beta_plus == cplx(1.0, 0.0));
    const InverseSquareExponents em = inverse_square_exponents(-1.0, 1.0);
    table_row(t, art.all_pass, "pathological at alpha2=-1",
              em.pathological ? "true" : "false", "true", "-", em.pathological);
    const InverseSquareExponents ee = inverse_square_exponents(-0.125, 1.0);
    table_row(t, art.all_pass, "regular at alpha2=-1/8",
              ee.pathological ? "true" : "false", "false", "-",
              !ee.pathological);
  }

  t += std::string("\noverall: ") + (art.all_pass ? "PASS" : "FAIL") + "\n";
  return art;
}

}  // namespace scatterbound
