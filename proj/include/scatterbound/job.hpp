#pragma once

//! Declarative job layer shared by the CLI and the language bindings:
//! strict config parsing (unknown keys rejected with a JSON-pointer-style
//! location), solve / oracle / bound runners producing deterministic
//! machine-readable artifacts, and the pathology demo table.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "scatterbound/potentials.hpp"
#include "scatterbound/variational.hpp"
#include "scatterbound/wavefield.hpp"

namespace scatterbound {

//! Raised for any invalid configuration; the CLI maps it to exit code 1 and
//! writes no output files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! Parsed, validated job description.
struct JobConfig {
  RadialPotential potential;
  // physics
  double k = 1.0;
  double mass = 1.0;
  int lmax = 0;
  // ansatz
  int grid_nodes = 128;
  double r_grid = 0.0;        //!< 0 = auto: truncation radius + 10/k
  double window_scale = 0.0;  //!< 0 = auto: 1/k
  std::string start = "zero";  //!< "zero" or "oracle"
  // optimizer
  OptimizerConfig optimizer;
  // bound requests
  std::vector<std::string> bound_requests;  //!< theorem tags
  std::string xi_source = "numerical";      //!< numerical | transfer-1d | fixed
  double xi_value = 0.0;                    //!< used when xi_source = fixed
  double bound_l1 = -1.0;          //!< standalone `bound` input (required there)
  double bound_sigma_tilde = -1.0;  //!< optional standalone input
  double bound_psi_inf = -1.0;      //!< optional standalone input
  // output
  std::string out_dir;  //!< optional config-level default, CLI --out wins

  //! Validates and parses a config for the given command ("solve",
  //! "oracle" or "bound").  Throws ConfigError naming the offending key.
  static JobConfig parse(const nlohmann::json& j, const std::string& command);
};

//! Effective derived values (documented so reports can echo them).
double effective_r_grid(const JobConfig& cfg);
double effective_window_scale(const JobConfig& cfg);

//! Radial grid used by the solver's ansatz: geometric spacing, plus a dyadic
//! node cluster around any potential jump radius.  A jump leaves the reduced
//! waves with a curvature kink that a C2 spline on a smooth grid only tracks
//! to O(h); grading the spacing down to ~h/n at the kink restores O(h^2)
//! resolvability at the cost of O(log n) extra nodes.
std::vector<double> ansatz_grid(const RadialPotential& p, double r_grid,
                                int grid_nodes);

//! Resamples the reference solution onto the ansatz grid: the bulk channel
//! carries the difference between the reference partial wave and the free +
//! windowed outgoing pieces, so the result is feasible and near-optimal.
ScatteringAnsatz oracle_resampled_ansatz(const RadialPotential& p, double k,
                                         double mass, int lmax, int grid_nodes,
                                         double r_grid, double window_scale);

//! Zero-channel ansatz (incident wave only) on the solver grid for `p`.
ScatteringAnsatz zero_ansatz(const RadialPotential& p, double k, double mass,
                             int lmax, int grid_nodes, double r_grid,
                             double window_scale, double alpha = 0.0);

struct SolveArtifacts {
  nlohmann::ordered_json report;
  std::string trace_csv;
  nlohmann::ordered_json ansatz;
  int exit_code = 0;  //!< 0 ok, 2 line-search failure
};
SolveArtifacts run_solve(const JobConfig& cfg);

struct OracleArtifacts {
  nlohmann::ordered_json report;
  std::string csv;
};
OracleArtifacts run_oracle(const JobConfig& cfg);

nlohmann::ordered_json run_bound(const JobConfig& cfg);

struct PathologyArtifacts {
  std::string table;                        //!< human-readable pass/fail table
  std::map<std::string, std::string> csvs;  //!< filename -> contents (--scan)
  bool all_pass = true;
};

//! Runs the counterexample demos.  case_name: "all", "instability",
//! "tuning", "nonconservation", "vslow" or "inverse-square".
PathologyArtifacts run_pathology(const std::string& case_name, bool scan,
                                 std::uint64_t seed = 0,
                                 bool seed_given = false);

}  // namespace scatterbound
