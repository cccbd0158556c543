#include "hcsig/witness.hpp"

#include <limits>
#include <string>

#include "hcsig/errors.hpp"

namespace hcsig {

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::consistent_unique_qm: return "consistent_unique_qm";
    case Verdict::consistent_range: return "consistent_range";
    case Verdict::signaling_witness: return "signaling_witness";
  }
  return "";
}

std::string_view scenario_mode_name(ScenarioMode m) noexcept {
  switch (m) {
    case ScenarioMode::communication_only: return "communication_only";
    case ScenarioMode::mixed_model_probe: return "mixed_model_probe";
  }
  return "";
}

ConstraintSpec build_constraints(const Scenario& scenario) {
  if (const auto* explicit_spec = std::get_if<ConstraintSpec>(&scenario.timing)) {
    return *explicit_spec;
  }
  const auto& timing = std::get<TimingStructure>(scenario.timing);

  if (scenario.mode == ScenarioMode::communication_only &&
      timing.count(PairLabel::after_after_undefined) > 0) {
    throw Error(ErrorCode::AfterAfterPresent,
                "after-after timing has undefined semantics: its outcome statistics cannot be "
                "specified without a causal loop; refusing to constrain it in communication-only "
                "mode");
  }
  if (timing.count(PairLabel::no_hidden_communication) > 1) {
    throw Error(ErrorCode::UnsupportedTimingPattern,
                "more than one pair without hidden communication is not supported");
  }

  const CorrelationTensor qm = correlation_tensor(scenario.state, scenario.settings);
  ConstraintSpec spec = ConstraintSpec::fixed_to(qm);
  bool all_qm = true;
  for (const auto& pair : kPairs) {
    const Component c = pair_component(pair[0], pair[1]);
    switch (timing[pair]) {
      case PairLabel::qm_correlated:
        break;
      case PairLabel::no_hidden_communication:
        all_qm = false;
        if (scenario.mode == ScenarioMode::communication_only) {
          spec.pin_to_product(c);
        } else {
          spec.release(c);
        }
        break;
      case PairLabel::after_after_undefined:
        all_qm = false;
        spec.release(c);
        break;
    }
  }
  if (!all_qm) spec.release(Component::abc);
  return spec;
}

WitnessReport run_scenario(const Scenario& scenario) {
  const ConstraintSpec spec = build_constraints(scenario);
  WitnessReport report{
      .qm_tensor = correlation_tensor(scenario.state, scenario.settings),
      .constraint_spec = spec,
      .region = feasible_region(spec, scenario.tol),
      .e_ab_interval = std::nullopt,
      .worst_probability = 0.0,
      .worst_point = {},
      .verdict = Verdict::signaling_witness,
  };

  const MaxMinResult certificate = max_min_probability(spec);
  report.worst_probability = certificate.value;
  report.worst_point = certificate.argpoint;

  if (!report.region.empty) {
    if (spec.is_free(Component::ab)) {
      report.e_ab_interval = project_interval(report.region, Component::ab);
    } else {
      const double fixed = spec.resolved_fixed_values()[Component::ab];
      report.e_ab_interval = Interval{fixed, fixed};
    }
    report.verdict = report.region.affine_dimension == 0 ? Verdict::consistent_unique_qm
                                                         : Verdict::consistent_range;
  }

  const bool witness = certificate.value < -scenario.tol;
  if (witness != report.region.empty) {
    throw Error(ErrorCode::InternalConsistency,
                "feasible region and max-min certificate disagree on emptiness");
  }
  return report;
}

Interval chsh_range(const std::array<Interval, 4>& e) noexcept {
  return {e[0].lo + e[1].lo + e[2].lo - e[3].hi, e[0].hi + e[1].hi + e[2].hi - e[3].lo};
}

ChshBox mixed_model_box_test(const StateVector& state, std::span<const BlochVector> alice,
                             std::span<const BlochVector> bob, const BlochVector& charlie,
                             const ChshSelection& selection, double tol) {
  if (alice.size() < 2 || bob.size() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "the CHSH box test needs at least two settings for Alice and for Bob");
  }
  const auto valid_pair = [](int first, int second, std::size_t n) {
    return first >= 0 && second >= 0 && first != second && static_cast<std::size_t>(first) < n &&
           static_cast<std::size_t>(second) < n;
  };
  if (!valid_pair(selection.alice_first, selection.alice_second, alice.size()) ||
      !valid_pair(selection.bob_first, selection.bob_second, bob.size())) {
    throw Error(ErrorCode::InvalidArgument, "CHSH selection must pick two distinct settings each");
  }

  ChshBox box{};
  box.selection = selection;
  for (std::size_t n = 0; n < alice.size(); ++n) {
    for (std::size_t m = 0; m < bob.size(); ++m) {
      const CorrelationTensor qm = correlation_tensor(state, {alice[n], bob[m], charlie});
      ConstraintSpec spec = ConstraintSpec::fixed_to(qm);
      spec.release(Component::ab).release(Component::abc);
      const auto interval = project_interval(feasible_region(spec, tol), Component::ab);
      if (!interval) {
        throw Error(ErrorCode::EmptyIntervalEncountered,
                    "setting pair (" + std::to_string(n) + ", " + std::to_string(m) +
                        ") admits no E(AB) at all under the QM marginals");
      }
      box.pairs.push_back({static_cast<int>(n), static_cast<int>(m), qm[Component::ab], *interval});
    }
  }

  const auto at = [&](int n, int m) -> const PairInterval& {
    return box.pairs[static_cast<std::size_t>(n) * bob.size() + static_cast<std::size_t>(m)];
  };
  const std::array<const PairInterval*, 4> chosen{
      &at(selection.alice_first, selection.bob_first),
      &at(selection.alice_first, selection.bob_second),
      &at(selection.alice_second, selection.bob_first),
      &at(selection.alice_second, selection.bob_second)};

  box.qm_chsh = chosen[0]->qm_e_ab + chosen[1]->qm_e_ab + chosen[2]->qm_e_ab - chosen[3]->qm_e_ab;
  const Interval s = chsh_range({chosen[0]->e_ab, chosen[1]->e_ab, chosen[2]->e_ab, chosen[3]->e_ab});
  box.min_chsh = s.lo;
  box.max_chsh = s.hi;
  box.mixed_models_signal = box.min_chsh > 2.0 + tol;
  return box;
}

VisibilityReport visibility_report(const StateVector& state, const SettingTriple& settings,
                                   double tol) {
  const CorrelationTensor qm = correlation_tensor(state, settings);
  const VisibilityRange clipped = visibility_range(qm, Component::ab, 1.0, tol);
  const VisibilityRange full =
      visibility_range(qm, Component::ab, std::numeric_limits<double>::infinity(), tol);
  return {qm[Component::ab], clipped.v_min, clipped.v_max, full.v_max};
}

}  // namespace hcsig
