#pragma once

// Scenario files: the JSON input accepted by `hcsig scenario`.
//
//   {
//     "state":    "ghz" | "w" | [[re, im], ... 8 entries],
//     "settings": {"a": "z" | [nx, ny, nz] | [list of those], "b": ..., "c": ...},
//     "timing":   {"model": "pf", "x": 1, "v_hc": 4, "t_c": 0.8, "delay_a": 0, ...}
//               | {"model": "multisim", "events": [[x, t] x3], "velocities": [v x3]}
//               | {"labels": {"ab": "no_hc", "ac": "qm", "bc": "qm"}},
//     "constraints": {"e_a": {"fixed": 0}, ..., "e_abc": "free"},   (instead of timing)
//     "mode":     "communication_only" | "mixed_model_probe",
//     "chsh_selection": {"alice": [0, 1], "bob": [0, 1]},
//     "tolerances": {"feasibility": 1e-9}
//   }
//
// Lists of settings for Alice and Bob select the CHSH box test. Unknown keys
// are rejected everywhere.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hcsig/report.hpp"
#include "hcsig/witness.hpp"

namespace hcsig {

struct BoxScenario {
  StateVector state;
  std::vector<BlochVector> alice;
  std::vector<BlochVector> bob;
  BlochVector charlie;
  ChshSelection selection;
  double tol = kDefaultValidityTolerance;
};

struct ParsedScenario {
  std::variant<Scenario, BoxScenario> job;
  std::optional<Json> timing_detail;
};

// Throws Error(ValidationError) for schema violations and the domain errors
// (NonNormalizedState, NonUnitBloch, SuperluminalFrame, ...) for invalid
// values.
ParsedScenario parse_scenario(const Json& document);

// Reads and parses a file; Error(ParseError) if it is unreadable or not JSON.
ParsedScenario load_scenario(const std::string& path);

// "x", "-y", "z" ... or a Bloch triple.
BlochVector parse_bloch(const Json& j);

// Named states ("ghz", "w") or eight amplitudes.
StateVector parse_state(const Json& j);

// Timing section: structure plus the echo used in reports.
struct ParsedTiming {
  TimingStructure structure;
  Json detail;
};
ParsedTiming parse_timing(const Json& j);

// Echo of a preferred-frame classification (parameters, window, labels).
Json model1_detail(double x, double v_hc, std::optional<double> t_c, double delay_a,
                   double delay_b, const std::optional<TimingStructure>& labels);
Json model2_detail(const Model2Config& cfg, const TimingStructure& labels);

}  // namespace hcsig
