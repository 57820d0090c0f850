#pragma once

// JSON renderings of result types for reports.

#include <json.hpp>

#include "fkdet/approx_harness.hpp"
#include "fkdet/fk_finite.hpp"
#include "fkdet/fk_zd.hpp"
#include "fkdet/lehmer_search.hpp"
#include "fkdet/mahler.hpp"

namespace fkdet::report {

using Json = nlohmann::ordered_json;

Json to_json(const ExactRadical& r);
Json to_json(const FKValue& v);
Json to_json(const MahlerValue& v);
Json to_json(const LaurentMatrix& m);
Json to_json(const PipelineTrace& t);
Json to_json(const SpecSchedule& s);
Json to_json(const SearchSpace& s);
Json to_json(const ScanReport& r);
Json to_json(const TraceMatch& t);
Json to_json(const DetSequence& s);
Json to_json(const ConstantEntry& c);

/// Shortest decimal that round-trips, as a string (for text output).
std::string format_double(double x);

}  // namespace fkdet::report
