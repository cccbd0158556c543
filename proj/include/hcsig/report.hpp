#pragma once

// JSON rendering of reports. Output is byte-stable: keys keep insertion
// order and every number is printed with 12 significant digits.

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "hcsig/witness.hpp"

namespace hcsig {

using Json = nlohmann::ordered_json;

// 12 significant digits; integral values keep a trailing ".0"; magnitudes
// below 5e-13 print as 0.0 so rounding noise does not leak into reports.
std::string format_number(double value);

// Two-space indented JSON using format_number for every float. Arrays of
// scalars stay on one line.
std::string dump_json(const Json& value);

Json to_json(const CorrelationTensor& t);
Json to_json(const Distribution3& d);
Json to_json(const ConstraintSpec& spec);
Json to_json(const FeasibleRegion& region);
Json to_json(const TimingStructure& timing);
Json to_json(const BlochVector& n);
Json to_json(const ChshBox& box);
Json to_json(const VisibilityReport& report);

// Full report for one scenario; `timing_detail` (model parameters, window,
// labels) is echoed when present.
Json scenario_report_json(const Scenario& scenario, const WitnessReport& report,
                          const std::optional<Json>& timing_detail);

// Parses {"e_ab": {"fixed": 0.0}} / "free" / "product" entries; all seven
// components are required. Throws Error(ValidationError).
ConstraintSpec constraints_from_json(const Json& j);

}  // namespace hcsig
