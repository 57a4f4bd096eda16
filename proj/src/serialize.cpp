#include "scatterbound/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace scatterbound {

namespace {

nlohmann::ordered_json complex_list(const std::vector<cplx>& v) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const cplx& z : v) {
    out.push_back({z.real(), z.imag()});
  }
  return out;
}

std::vector<cplx> complex_list_from(const nlohmann::json& j) {
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::runtime_error("ansatz record: complex entries must be [re, im] pairs");
    }
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

}  // namespace

nlohmann::ordered_json ansatz_to_json(const ScatteringAnsatz& a) {
  nlohmann::ordered_json j;
  j["format"] = "scatterbound-ansatz";
  j["version"] = 1;
  j["k"] = a.k;
  j["mass"] = a.m;
  j["lmax"] = a.lmax;
  j["window_scale"] = a.w;
  j["coulomb_alpha"] = a.alpha;
  j["incident"] = a.incident;
  j["grid"] = a.grid;
  nlohmann::ordered_json channels = nlohmann::ordered_json::array();
  for (int l = 0; l <= a.lmax; ++l) {
    nlohmann::ordered_json ch;
    ch["l"] = l;
    ch["f"] = {a.f[static_cast<size_t>(l)].real(), a.f[static_cast<size_t>(l)].imag()};
    ch["u"] = complex_list(a.u[static_cast<size_t>(l)]);
    channels.push_back(std::move(ch));
  }
  j["channels"] = std::move(channels);
  return j;
}

ScatteringAnsatz ansatz_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", std::string()) != "scatterbound-ansatz") {
    throw std::runtime_error("ansatz record: missing format tag");
  }
  if (j.value("version", 0) != 1) {
    throw std::runtime_error("ansatz record: unsupported version");
  }
  const double k = j.at("k").get<double>();
  const double m = j.at("mass").get<double>();
  const int lmax = j.at("lmax").get<int>();
  const double w = j.at("window_scale").get<double>();
  const double alpha = j.value("coulomb_alpha", 0.0);
  const bool incident = j.value("incident", true);
  std::vector<double> grid = j.at("grid").get<std::vector<double>>();

  ScatteringAnsatz a = ScatteringAnsatz::make(k, m, lmax, std::move(grid), w, alpha);
  a.incident = incident;
  const auto& channels = j.at("channels");
  if (static_cast<int>(channels.size()) != lmax + 1) {
    throw std::runtime_error("ansatz record: channel count does not match lmax");
  }
  std::vector<std::vector<cplx>> u(static_cast<size_t>(lmax) + 1);
  std::vector<cplx> f(static_cast<size_t>(lmax) + 1);
  for (const auto& ch : channels) {
    const int l = ch.at("l").get<int>();
    if (l < 0 || l > lmax) {
      throw std::runtime_error("ansatz record: channel index out of range");
    }
    const auto& fj = ch.at("f");
    f[static_cast<size_t>(l)] = cplx(fj[0].get<double>(), fj[1].get<double>());
    u[static_cast<size_t>(l)] = complex_list_from(ch.at("u"));
    if (u[static_cast<size_t>(l)].size() != a.grid.size()) {
      throw std::runtime_error("ansatz record: channel sample count does not match grid");
    }
  }
  a.set_channels(std::move(u), std::move(f));
  return a;
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::string out = "iter,loss,step,accepted\n";
  char buf[128];
  for (const TraceRow& row : trace) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%d\n", row.iter, row.loss, row.step,
                  row.accepted ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace scatterbound
