#include <doctest.h>

#include <cmath>
#include <random>

#include "hcsig/errors.hpp"
#include "hcsig/witness.hpp"
#include "oracles.hpp"

using namespace hcsig;

namespace {

const TimingStructure kSevered{PairLabel::no_hidden_communication, PairLabel::qm_correlated,
                               PairLabel::qm_correlated};
const TimingStructure kAllQm{PairLabel::qm_correlated, PairLabel::qm_correlated,
                             PairLabel::qm_correlated};

Scenario make(const StateVector& s, const BlochVector& n, TimingStructure t,
              ScenarioMode mode = ScenarioMode::communication_only) {
  return {s, SettingTriple::all(n), t, mode};
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no hcsig::Error thrown");
  return ErrorCode::InternalConsistency;
}

}  // namespace

TEST_CASE("constraints from timing") {
  const auto ghz = build_constraints(make(ghz_state(), BlochVector::sigma_z(), kSevered));
  const auto v = ghz.resolved_fixed_values();
  CHECK(v[Component::a] == doctest::Approx(0.0));
  CHECK(v[Component::ab] == 0.0);
  CHECK(v[Component::ac] == doctest::Approx(1.0));
  CHECK(ghz.free_components() == std::vector<Component>{Component::abc});
  CHECK(std::holds_alternative<ProductOfSingles>(ghz[Component::ab]));

  const auto w = build_constraints(make(w_state(), BlochVector::sigma_x(), kSevered)).resolved_fixed_values();
  CHECK(w[Component::ac] == doctest::Approx(2.0 / 3.0));
  CHECK(std::abs(w[Component::ab]) < 1e-15);

  const auto probe = build_constraints(
      make(ghz_state(), BlochVector::sigma_z(), kSevered, ScenarioMode::mixed_model_probe));
  CHECK(probe.free_components() == std::vector<Component>{Component::ab, Component::abc});

  const auto all = build_constraints(make(ghz_state(), BlochVector::sigma_z(), kAllQm));
  CHECK(all.free_components().empty());

  Scenario explicit_spec = make(ghz_state(), BlochVector::sigma_z(), kAllQm);
  ConstraintSpec custom;
  custom.fix(Component::a, 0.25);
  explicit_spec.timing = custom;
  CHECK(build_constraints(explicit_spec) == custom);
}

TEST_CASE("unsupported timing patterns") {
  const TimingStructure aa{PairLabel::after_after_undefined, PairLabel::qm_correlated,
                           PairLabel::qm_correlated};
  CHECK(code_of([&] { build_constraints(make(ghz_state(), BlochVector::sigma_z(), aa)); }) ==
        ErrorCode::AfterAfterPresent);
  const auto probe = build_constraints(make(ghz_state(), BlochVector::sigma_z(), aa,
                                            ScenarioMode::mixed_model_probe));
  CHECK(probe.is_free(Component::ab));
  const TimingStructure two{PairLabel::no_hidden_communication,
                            PairLabel::no_hidden_communication, PairLabel::qm_correlated};
  CHECK(code_of([&] { build_constraints(make(ghz_state(), BlochVector::sigma_z(), two)); }) ==
        ErrorCode::UnsupportedTimingPattern);
}

TEST_CASE("worked examples end to end") {
  const auto g2 = run_scenario(make(ghz_state(), BlochVector::sigma_z(), kSevered));
  CHECK(g2.verdict == Verdict::signaling_witness);
  CHECK(g2.region.empty);
  CHECK(std::abs(g2.worst_probability + 0.125) < 1e-9);
  CHECK_FALSE(g2.e_ab_interval.has_value());

  const auto gf = run_scenario(
      make(ghz_state(), BlochVector::sigma_z(), kSevered, ScenarioMode::mixed_model_probe));
  CHECK(gf.verdict == Verdict::consistent_unique_qm);
  REQUIRE(gf.region.vertices.size() == 1);
  CHECK(gf.region.vertices[0][0] == doctest::Approx(1.0));
  CHECK(std::abs(gf.region.vertices[0][1]) < 1e-9);

  const auto w2 = run_scenario(make(w_state(), BlochVector::sigma_x(), kSevered));
  CHECK(w2.verdict == Verdict::signaling_witness);
  CHECK(w2.worst_probability == doctest::Approx(-1.0 / 24.0));

  const auto wf = run_scenario(
      make(w_state(), BlochVector::sigma_x(), kSevered, ScenarioMode::mixed_model_probe));
  CHECK(wf.verdict == Verdict::consistent_range);
  REQUIRE(wf.e_ab_interval);
  CHECK(std::abs(wf.e_ab_interval->lo - 1.0 / 3.0) < 1e-9);
  CHECK(std::abs(wf.e_ab_interval->hi - 1.0) < 1e-9);
}

TEST_CASE("all-QM timing is always consistent") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const Scenario s{oracle::random_state(rng), oracle::random_settings(rng), kAllQm};
    const auto r = run_scenario(s);
    CHECK(r.verdict != Verdict::signaling_witness);
    CHECK_FALSE(r.region.empty);
    CHECK(r.worst_probability >= -1e-9);
  }
}

TEST_CASE("verdict consistency and exact product pinning") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const Scenario s{oracle::random_state(rng), oracle::random_settings(rng), kSevered,
                     trial % 2 ? ScenarioMode::mixed_model_probe : ScenarioMode::communication_only};
    const auto r = run_scenario(s);
    const bool witness = r.verdict == Verdict::signaling_witness;
    CHECK(r.region.empty == witness);
    CHECK((r.worst_probability < -1e-9) == witness);
    if (s.mode == ScenarioMode::communication_only) {
      const auto v = r.constraint_spec.resolved_fixed_values();
      CHECK(v[Component::ab] == v[Component::a] * v[Component::b]);
    }
  }
}

TEST_CASE("chsh range over a box") {
  const Interval unit{-1, 1};
  const Interval r = chsh_range({unit, unit, unit, unit});
  CHECK(r.lo == -4.0);
  CHECK(r.hi == 4.0);
  const Interval point = chsh_range({Interval{0.5, 0.5}, Interval{0.5, 0.5}, Interval{0.5, 0.5},
                                     Interval{-0.5, -0.5}});
  CHECK(point.lo == 2.0);
  CHECK(point.hi == 2.0);

  // Enlarging an interval never raises the minimum.
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-1.0, 1.0), grow(0.0, 0.3);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<Interval, 4> box{};
    for (auto& i : box) {
      const double a = u(rng), b = u(rng);
      i = {std::min(a, b), std::max(a, b)};
    }
    auto wider = box;
    const std::size_t k = trial % 4;
    wider[k] = {std::max(-1.0, box[k].lo - grow(rng)), std::min(1.0, box[k].hi + grow(rng))};
    CHECK(chsh_range(wider).lo <= chsh_range(box).lo);
    CHECK(chsh_range(wider).hi >= chsh_range(box).hi);
  }
}

TEST_CASE("mixed-model box test") {
  const std::vector<BlochVector> xy{BlochVector::sigma_x(), BlochVector::sigma_y()};
  const ChshBox g = mixed_model_box_test(ghz_state(), xy, xy, BlochVector::sigma_x());
  REQUIRE(g.pairs.size() == 4);
  // The AB reduced state of GHZ is a classical mixture of |00> and |11>, so
  // equatorial settings give no AB correlation.
  for (const auto& p : g.pairs) CHECK(std::abs(p.qm_e_ab) < 1e-12);
  CHECK(g.min_chsh <= 2.0);
  CHECK_FALSE(g.mixed_models_signal);
  CHECK(g.qm_chsh >= g.min_chsh);
  CHECK(g.qm_chsh <= g.max_chsh);

  // Each interval matches a grid search over (e_ab, e_abc).
  const std::vector<BlochVector> xz{BlochVector::sigma_x(), BlochVector::sigma_z()};
  const ChshBox w = mixed_model_box_test(w_state(), xz, xz, BlochVector::sigma_x());
  for (const auto& p : w.pairs) {
    const SettingTriple s{xz[p.alice], xz[p.bob], BlochVector::sigma_x()};
    ConstraintSpec spec = ConstraintSpec::fixed_to(correlation_tensor(w_state(), s));
    spec.release(Component::ab).release(Component::abc);
    const oracle::Grid grid = oracle::grid_search(spec, 2e-3);
    double lo = 2, hi = -2;
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j)
        if (grid.min_p[static_cast<std::size_t>(i) * grid.n + j] >= -1e-9) {
          lo = std::min(lo, grid.coord(i));
          hi = std::max(hi, grid.coord(i));
        }
    CHECK(std::abs(p.e_ab.lo - lo) <= 4e-3);
    CHECK(std::abs(p.e_ab.hi - hi) <= 4e-3);
    CHECK(p.e_ab.contains(p.qm_e_ab, 1e-9));
  }

  const std::vector<BlochVector> z{BlochVector::sigma_z()};
  CHECK(code_of([&] { mixed_model_box_test(ghz_state(), z, z, BlochVector::sigma_z()); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] {
          mixed_model_box_test(ghz_state(), xy, xy, BlochVector::sigma_x(), ChshSelection{0, 2, 0, 1});
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("visibility report") {
  const auto g = visibility_report(ghz_state(), SettingTriple::all(BlochVector::sigma_z()));
  CHECK(std::abs(g.v_min - 1.0) < 1e-6);
  CHECK(std::abs(g.v_max - 1.0) < 1e-6);
  const auto w = visibility_report(w_state(), SettingTriple::all(BlochVector::sigma_x()));
  CHECK(std::abs(w.v_min - 0.5) < 1e-6);
  CHECK(std::abs(w.v_max - 1.0) < 1e-6);
  CHECK(std::abs(w.v_max_unclipped - 1.5) < 1e-6);
  CHECK(w.qm_e_ab == doctest::Approx(2.0 / 3.0));
  CHECK(code_of([] { visibility_report(ghz_state(), SettingTriple::all(BlochVector::sigma_x())); }) ==
        ErrorCode::ZeroQMValue);
}
