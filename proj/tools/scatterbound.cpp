//! scatterbound CLI: config-driven solve / oracle / bound jobs and the
//! counterexample demo table, with deterministic machine-readable outputs.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "scatterbound/job.hpp"

namespace {

namespace fs = std::filesystem;
using scatterbound::ConfigError;
using scatterbound::JobConfig;

nlohmann::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config error: cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const std::exception& ex) {
    throw ConfigError("config error: '" + path +
                      "' is not valid JSON: " + ex.what());
  }
}

fs::path prepare_out_dir(const std::string& flag_dir, const JobConfig& cfg) {
  const std::string dir =
      !flag_dir.empty() ? flag_dir : (!cfg.out_dir.empty() ? cfg.out_dir : ".");
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec && !fs::is_directory(p))
    throw ConfigError("config error: cannot create output directory '" + dir +
                      "'");
  return p;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scatterbound: approximate scattering states with certified "
               "error bounds"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  long long seed_override = -1;
  std::string pathology_case = "all";
  bool scan = false;

  CLI::App* solve = app.add_subcommand(
      "solve", "minimize the residual norm and certify error bounds");
  solve->add_option("--config", config_path, "job config JSON")->required();
  solve->add_option("--out", out_dir, "output directory (default '.')");
  solve->add_option("--seed", seed_override, "override the optimizer seed");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "reference phase shifts and cross section");
  oracle->add_option("--config", config_path, "job config JSON")->required();
  oracle->add_option("--out", out_dir, "output directory (default '.')");
  oracle->add_option("--seed", seed_override, "echoed into the report");

  CLI::App* bound = app.add_subcommand(
      "bound", "evaluate stability bounds from a measured residual norm");
  bound->add_option("--config", config_path, "job config JSON")->required();
  bound->add_option("--out", out_dir, "output directory (default '.')");
  bound->add_option("--seed", seed_override, "echoed into the report");

  CLI::App* pathology = app.add_subcommand(
      "pathology", "run the counterexample demos and print a pass/fail table");
  pathology->add_option("--case", pathology_case,
                        "all | instability | tuning | nonconservation | "
                        "vslow | inverse-square");
  pathology->add_flag("--scan", scan, "also write CSV scaling data");
  pathology->add_option("--out", out_dir, "directory for --scan CSVs");
  pathology->add_option("--seed", seed_override, "echoed into the table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pathology->parsed()) {
      const scatterbound::PathologyArtifacts art = scatterbound::run_pathology(
          pathology_case, scan,
          seed_override >= 0 ? static_cast<std::uint64_t>(seed_override) : 0,
          seed_override >= 0);
      std::cout << art.table;
      if (scan) {
        const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        for (const auto& [name, csv] : art.csvs) write_file(dir / name, csv);
      }
      return art.all_pass ? 0 : 2;
    }

    const std::string command = solve->parsed()   ? "solve"
                                : oracle->parsed() ? "oracle"
                                                   : "bound";
    JobConfig cfg = JobConfig::parse(load_config(config_path), command);
    if (seed_override >= 0)
      cfg.optimizer.seed = static_cast<std::uint64_t>(seed_override);

    if (command == "solve") {
      const scatterbound::SolveArtifacts art = scatterbound::run_solve(cfg);
      const fs::path dir = prepare_out_dir(out_dir, cfg);
      write_file(dir / "report.json", art.report.dump(2) + "\n");
      write_file(dir / "trace.csv", art.trace_csv);
      write_file(dir / "ansatz.json", art.ansatz.dump(2) + "\n");
      if (art.exit_code != 0)
        std::cerr << "solve: line search stalled before the iteration budget; "
                     "see trace.csv\n";
      return art.exit_code;
    }
    if (command == "oracle") {
      const scatterbound::OracleArtifacts art = scatterbound::run_oracle(cfg);
      const fs::path dir = prepare_out_dir(out_dir, cfg);
      write_file(dir / "oracle.json", art.report.dump(2) + "\n");
      write_file(dir / "oracle.csv", art.csv);
      return 0;
    }
    const nlohmann::ordered_json report = scatterbound::run_bound(cfg);
    const fs::path dir = prepare_out_dir(out_dir, cfg);
    write_file(dir / "report.json", report.dump(2) + "\n");
    return 0;
  } catch (const ConfigError& ex) {
    std::cerr << ex.what() << "\n";
    return 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
