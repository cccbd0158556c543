#pragma once

// Turns a timing structure plus a quantum state into correlator constraints
// and reports whether any joint distribution satisfies them.

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "hcsig/correlation.hpp"
#include "hcsig/feasibility.hpp"
#include "hcsig/quantum.hpp"
#include "hcsig/timing.hpp"

namespace hcsig {

enum class ScenarioMode {
  // Correlations arise only when hidden communication is received: a severed
  // pair carries the product of its singles.
  communication_only,
  // Local variables may correlate a severed pair: its correlator is free.
  mixed_model_probe,
};

enum class Verdict { consistent_unique_qm, consistent_range, signaling_witness };

std::string_view verdict_name(Verdict v) noexcept;
std::string_view scenario_mode_name(ScenarioMode m) noexcept;

struct Scenario {
  StateVector state;
  SettingTriple settings;
  // Either a timing structure to translate, or constraints to use verbatim.
  std::variant<TimingStructure, ConstraintSpec> timing;
  ScenarioMode mode = ScenarioMode::communication_only;
  double tol = kDefaultValidityTolerance;
};

struct WitnessReport {
  CorrelationTensor qm_tensor;
  ConstraintSpec constraint_spec;
  FeasibleRegion region;
  std::optional<Interval> e_ab_interval;
  double worst_probability;
  Point worst_point;  // free coordinates attaining worst_probability
  Verdict verdict;
};

// Singles and QM-correlated pairs fixed to QM values; the severed pair
// pinned to the product of its singles (communication_only) or left free
// (mixed_model_probe); the triple free unless every pair is QM-correlated.
// Throws Error(AfterAfterPresent) in communication_only mode when a pair has
// after-after timing, and Error(UnsupportedTimingPattern) when more than one
// pair is severed.
ConstraintSpec build_constraints(const Scenario& scenario);

WitnessReport run_scenario(const Scenario& scenario);

struct ChshSelection {
  int alice_first = 0;
  int alice_second = 1;
  int bob_first = 0;
  int bob_second = 1;
};

struct PairInterval {
  int alice;
  int bob;
  double qm_e_ab;
  Interval e_ab;
};

struct ChshBox {
  std::vector<PairInterval> pairs;  // every (n, m), Alice-major order
  ChshSelection selection;
  double qm_chsh;
  double min_chsh;
  double max_chsh;
  bool mixed_models_signal;
};

// Range of S = E11 + E12 + E21 - E22 when each E lies in its own interval,
// given in the order (11, 12, 21, 22).
Interval chsh_range(const std::array<Interval, 4>& intervals) noexcept;

// Severed-AB box test: per setting pair, the feasible E(AB) interval with
// singles, AC and BC fixed to QM and the triple free; then the CHSH range over
// the box of the selected intervals. Throws Error(InvalidArgument) unless
// both setting lists have at least two entries and the selection indexes
// them, and Error(EmptyIntervalEncountered) if a setting pair is infeasible.
ChshBox mixed_model_box_test(const StateVector& state, std::span<const BlochVector> alice,
                             std::span<const BlochVector> bob, const BlochVector& charlie,
                             const ChshSelection& selection = {},
                             double tol = kDefaultValidityTolerance);

struct VisibilityReport {
  double qm_e_ab;
  double v_min;            // smallest feasible V in [0, 1]
  double v_max;            // largest feasible V in [0, 1]
  double v_max_unclipped;  // largest feasible V with |V * E_QM| <= 1
};

// Throws Error(ZeroQMValue) when E_QM(AB) vanishes for these settings.
VisibilityReport visibility_report(const StateVector& state, const SettingTriple& settings,
                                   double tol = kDefaultValidityTolerance);

}  // namespace hcsig
