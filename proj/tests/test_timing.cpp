#include <doctest.h>

#include <cmath>
#include <random>

#include "hcsig/errors.hpp"
#include "hcsig/timing.hpp"

using namespace hcsig;

namespace {

const TimingStructure kSevered{PairLabel::no_hidden_communication, PairLabel::qm_correlated,
                               PairLabel::qm_correlated};

}  // namespace

TEST_CASE("label names") {
  CHECK(pair_label_name(PairLabel::no_hidden_communication) == "no_hc");
  CHECK(pair_label_from_name("after_after") == PairLabel::after_after_undefined);
  CHECK_FALSE(pair_label_from_name("before").has_value());
  CHECK(kSevered[{Party::B, Party::A}] == PairLabel::no_hidden_communication);
  CHECK(kSevered.count(PairLabel::qm_correlated) == 2);
}

TEST_CASE("lorentz time") {
  const SpacetimeEvent e{1.0, 2.0};
  CHECK(lorentz_time(e, 0.0) == 2.0);
  CHECK(lorentz_time(e, 0.6) == doctest::Approx(1.25 * (2.0 - 0.6)));
  CHECK_THROWS_AS(lorentz_time(e, 1.0), Error);
  CHECK_THROWS_AS(lorentz_time(e, -1.2), Error);
}

TEST_CASE("hidden-communication reach") {
  const SpacetimeEvent a{0.0, 0.0};
  CHECK(hc_reachable(a, {2.0, 1.0}, 2.0));
  CHECK_FALSE(hc_reachable(a, {2.0001, 1.0}, 2.0));
  CHECK_FALSE(hc_reachable(a, {0.0, 0.0}, 100.0));
  CHECK_FALSE(hc_reachable({0.0, 1.0}, a, 100.0));
}

TEST_CASE("preferred-frame window") {
  const auto w = model1_timing_window(1.0, 4.0);
  REQUIRE(w);
  CHECK(w->lo == 0.75);
  CHECK(w->hi == 1.0);
  CHECK_FALSE(model1_timing_window(1.0, 3.0).has_value());
  CHECK_FALSE(model1_timing_window(1.0, 2.0).has_value());
  CHECK(model1_timing_window(10.0, 3.0000001).has_value());
  CHECK_THROWS_AS(model1_timing_window(0.0, 4.0), Error);
  CHECK_THROWS_AS(model1_timing_window(1.0, -4.0), Error);
}

TEST_CASE("preferred-frame classification") {
  CHECK(model1_classify(Model1Config::symmetric(1.0, 4.0, 0.8)) == kSevered);
  // Any t_C inside the window gives the same structure.
  for (double tc : {0.76, 0.9, 0.99}) CHECK(model1_classify(Model1Config::symmetric(1.0, 4.0, tc)) == kSevered);
  // Outside it, C loses contact with one side or sees a signal from both.
  CHECK(model1_classify(Model1Config::symmetric(1.0, 4.0, 0.2)).ac == PairLabel::no_hidden_communication);

  // A and B are 2x apart, so B's signal needs 2x/v_hc to reach A.
  CHECK(model1_classify(Model1Config::symmetric(1.0, 4.0, 0.8, 0.26)).ab ==
        PairLabel::no_hidden_communication);
  CHECK(model1_classify(Model1Config::symmetric(1.0, 4.0, 0.8, 0.51)).ab == PairLabel::qm_correlated);
  CHECK(model1_classify(Model1Config::symmetric(1.0, 4.0, 0.8, 0.0, 0.51)).ab == PairLabel::qm_correlated);

  Model1Config fast = Model1Config::symmetric(1.0, 1e6, 0.5);
  fast.events[0].t = 0.0;
  fast.events[1].t = 0.1;
  const TimingStructure all_qm{PairLabel::qm_correlated, PairLabel::qm_correlated,
                               PairLabel::qm_correlated};
  CHECK(model1_classify(fast) == all_qm);

  CHECK_THROWS_AS(model1_classify(Model1Config::symmetric(1.0, 0.0, 0.8)), Error);
  CHECK_THROWS_AS(model1_classify(Model1Config::symmetric(1.0, 4.0, 0.8, -0.1)), Error);
}

TEST_CASE("multisimultaneity classification") {
  CHECK(multisim_classify(Model2Config::receding(0.5)).ab == PairLabel::no_hidden_communication);
  CHECK(multisim_classify(Model2Config::receding(0.5)) == kSevered);

  Model2Config approaching = Model2Config::receding(-0.5);
  CHECK(multisim_classify(approaching).ab == PairLabel::after_after_undefined);

  Model2Config rest{{SpacetimeEvent{-1, 0.0, Frame::laboratory}, SpacetimeEvent{1, 0.3, Frame::laboratory},
                     SpacetimeEvent{0, 0.6, Frame::laboratory}},
                    {0.0, 0.0, 0.0}};
  const TimingStructure s = multisim_classify(rest);
  CHECK(s.ab == PairLabel::qm_correlated);
  CHECK(s.ac == PairLabel::qm_correlated);
  CHECK(s.bc == PairLabel::qm_correlated);

  CHECK_THROWS_AS(multisim_classify(Model2Config::receding(1.0)), Error);
}

TEST_CASE("multisimultaneity is mirror symmetric") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> pos(-2.0, 2.0), vel(-0.95, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    Model2Config cfg{};
    for (int i = 0; i < 3; ++i) {
      cfg.events[i] = {pos(rng), pos(rng), Frame::laboratory};
      cfg.device_velocity[i] = vel(rng);
    }
    Model2Config mirror = cfg;
    for (int i = 0; i < 3; ++i) {
      mirror.events[i].x = -cfg.events[i].x;
      mirror.device_velocity[i] = -cfg.device_velocity[i];
    }
    CHECK(multisim_classify(cfg) == multisim_classify(mirror));
  }
}
