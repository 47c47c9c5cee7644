#pragma once

// JSON forms of results and reports. Infinite endpoints are the strings
// "-inf" / "+inf"; undefined numbers are null.

#include <json.hpp>

#include "gaugequad/calculus.hpp"
#include "gaugequad/corpus.hpp"
#include "gaugequad/extreal.hpp"
#include "gaugequad/integrator.hpp"
#include "gaugequad/partition.hpp"

namespace gaugequad {

nlohmann::json to_json(const ExtReal& x);
nlohmann::json to_json(const ClosedInterval& i);
nlohmann::json to_json(const TaggedPartition& p, const Gauge& g);
nlohmann::json to_json(const IntegralResult& r, bool trace);
nlohmann::json to_json(const FtcReport& r);
nlohmann::json to_json(const InterchangeReport& r, bool trace = false);
nlohmann::json to_json(const CaseReport& r, bool trace, bool timing);

}  // namespace gaugequad
