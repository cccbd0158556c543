#include "hcsig/timing.hpp"

#include <cmath>
#include <sstream>

#include "hcsig/errors.hpp"

namespace hcsig {
namespace {

void require_finite(const SpacetimeEvent& e) {
  if (!std::isfinite(e.x) || !std::isfinite(e.t)) {
    throw Error(ErrorCode::InvalidArgument, "event coordinates must be finite");
  }
}

void require_subluminal(double v) {
  if (!(std::abs(v) < 1.0)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "device speed " << v << " is not below the speed of light";
    throw Error(ErrorCode::SuperluminalFrame, msg.str());
  }
}

}  // namespace

std::string_view pair_label_name(PairLabel label) noexcept {
  switch (label) {
    case PairLabel::qm_correlated: return "qm";
    case PairLabel::no_hidden_communication: return "no_hc";
    case PairLabel::after_after_undefined: return "after_after";
  }
  return "";
}

std::optional<PairLabel> pair_label_from_name(std::string_view name) noexcept {
  for (PairLabel l : {PairLabel::qm_correlated, PairLabel::no_hidden_communication,
                      PairLabel::after_after_undefined}) {
    if (pair_label_name(l) == name) return l;
  }
  return std::nullopt;
}

PairLabel TimingStructure::operator[](std::array<Party, 2> pair) const {
  const PartySet set{pair[0], pair[1]};
  if (set == PartySet{Party::A, Party::B}) return ab;
  if (set == PartySet{Party::A, Party::C}) return ac;
  if (set == PartySet{Party::B, Party::C}) return bc;
  throw Error(ErrorCode::InvalidArgument, "pair needs two distinct parties");
}

int TimingStructure::count(PairLabel label) const noexcept {
  return (ab == label) + (ac == label) + (bc == label);
}

Model1Config Model1Config::symmetric(double x, double v_hc, double t_c, double delay_a,
                                     double delay_b) {
  return {{{{-x, 0.0}, {x, 0.0}, {0.0, t_c}}}, v_hc, delay_a, delay_b};
}

Model2Config Model2Config::receding(double v, double t_c) {
  const auto lab = Frame::laboratory;
  return {{{{-1.0, 0.0, lab}, {1.0, 0.0, lab}, {0.0, t_c, lab}}}, {-v, v, 0.0}};
}

double lorentz_time(const SpacetimeEvent& event, double v) {
  require_subluminal(v);
  const double gamma = 1.0 / std::sqrt(1.0 - v * v);
  return gamma * (event.t - v * event.x);
}

bool hc_reachable(const SpacetimeEvent& src, const SpacetimeEvent& dst, double v_hc) noexcept {
  const double dt = dst.t - src.t;
  if (!(dt > 0.0)) return false;
  return std::abs(dst.x - src.x) <= v_hc * dt + kReachTolerance;
}

std::optional<OpenInterval> model1_timing_window(double x, double v_hc) {
  if (!(x > 0.0) || !(v_hc > 0.0) || !std::isfinite(x) || !std::isfinite(v_hc)) {
    throw Error(ErrorCode::InvalidArgument, "timing window needs x > 0 and v_hc > 0");
  }
  if (v_hc <= 3.0) return std::nullopt;
  return OpenInterval{3.0 * x / v_hc, x};
}

TimingStructure model1_classify(const Model1Config& cfg) {
  if (!(cfg.v_hc > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "hidden-communication speed must be positive");
  }
  if (!(cfg.delay_a >= 0.0) || !(cfg.delay_b >= 0.0) || !std::isfinite(cfg.delay_a) ||
      !std::isfinite(cfg.delay_b)) {
    throw Error(ErrorCode::InvalidArgument, "detection delays must be finite and non-negative");
  }
  auto events = cfg.events;
  for (const auto& e : events) require_finite(e);
  events[party_index(Party::A)].t += cfg.delay_a;
  events[party_index(Party::B)].t += cfg.delay_b;

  const auto label = [&](Party x, Party y) {
    const auto& ex = events[party_index(x)];
    const auto& ey = events[party_index(y)];
    return hc_reachable(ex, ey, cfg.v_hc) || hc_reachable(ey, ex, cfg.v_hc)
               ? PairLabel::qm_correlated
               : PairLabel::no_hidden_communication;
  };
  return {label(Party::A, Party::B), label(Party::A, Party::C), label(Party::B, Party::C)};
}

TimingStructure multisim_classify(const Model2Config& cfg) {
  for (double v : cfg.device_velocity) require_subluminal(v);
  for (const auto& e : cfg.events) require_finite(e);

  // Simultaneity in the device frame counts as "not yet chosen".
  const auto before = [&](Party x, Party y) {
    const double v = cfg.device_velocity[party_index(x)];
    return lorentz_time(cfg.events[party_index(y)], v) >=
           lorentz_time(cfg.events[party_index(x)], v);
  };
  const auto label = [&](Party x, Party y) {
    const int count = static_cast<int>(before(x, y)) + static_cast<int>(before(y, x));
    switch (count) {
      case 2: return PairLabel::no_hidden_communication;
      case 1: return PairLabel::qm_correlated;
      default: return PairLabel::after_after_undefined;
    }
  };
  return {label(Party::A, Party::B), label(Party::A, Party::C), label(Party::B, Party::C)};
}

}  // namespace hcsig
