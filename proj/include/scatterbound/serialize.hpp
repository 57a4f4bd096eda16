#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "scatterbound/variational.hpp"
#include "scatterbound/wavefield.hpp"

namespace scatterbound {

//! Serialize an ansatz to a versioned JSON record.  Complex samples are
//! stored as [re, im] pairs; doubles round-trip bit-exactly through the
//! shortest-representation printer used by the JSON library.
nlohmann::ordered_json ansatz_to_json(const ScatteringAnsatz& a);

//! Rebuild an ansatz from a record produced by ansatz_to_json.  Throws
//! std::runtime_error on version or shape mismatches.
ScatteringAnsatz ansatz_from_json(const nlohmann::json& j);

//! Render an optimizer trace as CSV with a fixed header.  Values are
//! printed with %.17g so a re-run produces byte-identical output.
std::string trace_to_csv(const std::vector<TraceRow>& trace);

}  // namespace scatterbound
