#pragma once

#include "cutwalk/cuts.hpp"
#include "cutwalk/orbitchain.hpp"
#include "cutwalk/report.hpp"

namespace cutwalk {

// JSON views of the analysis records, field names matching the record
// layouts. Vertices serialize as arrays of their integer coordinates.

Json to_json(const CutReport& report);
Json to_json(const IntersectionRecord& record);
Json to_json(const GEstimate& estimate);
Json to_json(const OrbitChain& chain);

}  // namespace cutwalk
