#pragma once

#include "json.hpp"
#include "nneig/eigensolver.hpp"
#include "nneig/extreme.hpp"
#include "nneig/matgen.hpp"
#include "nneig/polyapprox.hpp"
#include "nneig/pseudospectra.hpp"

namespace nneig {

// JSON views of results. `summary` drops per-level / per-sweep records and
// keeps totals, so long traces stay small.
enum class TraceDetail { full, summary };

nlohmann::json to_json(const SolverTrace& t, TraceDetail detail = TraceDetail::full);
nlohmann::json to_json(const EigenEstimate& r, TraceDetail detail = TraceDetail::full);
nlohmann::json to_json(const RegionResult& r, TraceDetail detail = TraceDetail::full);
nlohmann::json to_json(const EigenvectorResult& r);
nlohmann::json to_json(const ExtremeTrace& t, TraceDetail detail = TraceDetail::full);
nlohmann::json to_json(const ExtremeResult& r, TraceDetail detail = TraceDetail::full);
nlohmann::json to_json(const GapResult& r, TraceDetail detail = TraceDetail::full);
nlohmann::json to_json(const HmuReport& r);
nlohmann::json to_json(const InclusionReport& r);
nlohmann::json metadata_json(const GeneratedMatrix& g);

}  // namespace nneig
