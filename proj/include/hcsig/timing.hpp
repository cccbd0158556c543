#pragma once

// Event ordering for the two hidden-communication models.
//
// Units have c = 1 and one spatial dimension. Model 1 works in a single
// preferred frame where hidden communication travels at v_hc. Model 2
// (multisimultaneity) lets each party judge "before" and "after" in the rest
// frame of its own choice device.

#include <array>
#include <optional>
#include <string_view>

#include "hcsig/types.hpp"

namespace hcsig {

inline constexpr double kReachTolerance = 1e-12;

enum class Frame { preferred, laboratory };

struct SpacetimeEvent {
  double x;
  double t;
  Frame frame = Frame::preferred;
};

enum class PairLabel { qm_correlated, no_hidden_communication, after_after_undefined };

std::string_view pair_label_name(PairLabel label) noexcept;  // "qm", "no_hc", "after_after"
std::optional<PairLabel> pair_label_from_name(std::string_view name) noexcept;

// Label per unordered pair, in the order AB, AC, BC.
struct TimingStructure {
  PairLabel ab;
  PairLabel ac;
  PairLabel bc;

  PairLabel operator[](std::array<Party, 2> pair) const;
  int count(PairLabel label) const noexcept;

  friend bool operator==(const TimingStructure&, const TimingStructure&) = default;
};

inline constexpr std::array<std::array<Party, 2>, 3> kPairs{
    {{Party::A, Party::B}, {Party::A, Party::C}, {Party::B, Party::C}}};

struct OpenInterval {
  double lo;
  double hi;
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

struct Model1Config {
  std::array<SpacetimeEvent, 3> events;  // indexed by party, preferred-frame coordinates
  double v_hc;
  double delay_a = 0.0;
  double delay_b = 0.0;

  // The symmetric layout D_A = (-x, 0), D_B = (x, 0), D_C = (0, t_c).
  static Model1Config symmetric(double x, double v_hc, double t_c, double delay_a = 0.0,
                                double delay_b = 0.0);
};

struct Model2Config {
  std::array<SpacetimeEvent, 3> events;  // laboratory-frame coordinates
  std::array<double, 3> device_velocity;  // |v| < 1

  // A at (-1, 0) moving at -v, B at (1, 0) moving at +v, C at rest at (0, t_c).
  static Model2Config receding(double v, double t_c = 0.5);
};

// t' = gamma (t - v x). Throws Error(SuperluminalFrame) if |v| >= 1.
double lorentz_time(const SpacetimeEvent& event, double v);

// Strictly later, and within the hidden-communication cone of `src`.
bool hc_reachable(const SpacetimeEvent& src, const SpacetimeEvent& dst, double v_hc) noexcept;

// Admissible detection times of C: 3x/v_hc < t_C < x. Empty iff v_hc <= 3.
// Throws Error(InvalidArgument) unless x > 0 and v_hc > 0.
std::optional<OpenInterval> model1_timing_window(double x, double v_hc);

// Delays are added to the detection times of A and B; a pair is
// QM-correlated iff hidden communication from one detection reaches the
// other. Throws Error(InvalidArgument) for v_hc <= 0, negative or
// non-finite delays, or non-finite coordinates.
TimingStructure model1_classify(const Model1Config& cfg);

// X is "before" w.r.t. Y iff, in X's device frame, Y's event is not strictly
// earlier than X's. Both before: no hidden communication; one before:
// QM-correlated; neither: after-after (undefined semantics).
// Throws Error(SuperluminalFrame) if any device speed is >= 1.
TimingStructure multisim_classify(const Model2Config& cfg);

}  // namespace hcsig
