#include "hcsig/quantum.hpp"

#include <cmath>
#include <sstream>

#include "hcsig/errors.hpp"

namespace hcsig {
namespace {

using Amplitudes = std::array<Amplitude, 8>;

// Applies n.sigma = [[z, x - iy], [x + iy, -z]] to one qubit in place.
void apply_observable(Amplitudes& psi, Party party, const BlochVector& n) {
  const int bit = 1 << party_shift(party);
  const Amplitude lower(n.x(), n.y());
  const Amplitude upper(n.x(), -n.y());
  for (int i = 0; i < 8; ++i) {
    if ((i & bit) != 0) continue;
    const int j = i | bit;
    const Amplitude a0 = psi[i];
    const Amplitude a1 = psi[j];
    psi[i] = n.z() * a0 + upper * a1;
    psi[j] = lower * a0 - n.z() * a1;
  }
}

// Applies (I + sign * n.sigma) / 2 to one qubit in place.
void apply_projector(Amplitudes& psi, Party party, const BlochVector& n, int sign) {
  Amplitudes flipped = psi;
  apply_observable(flipped, party, n);
  for (int i = 0; i < 8; ++i) psi[i] = 0.5 * (psi[i] + static_cast<double>(sign) * flipped[i]);
}

}  // namespace

double norm_squared(const Amplitudes& amplitudes) noexcept {
  double total = 0.0;
  for (const auto& a : amplitudes) total += std::norm(a);
  return total;
}

StateVector::StateVector(const Amplitudes& amplitudes) : amplitudes_(amplitudes) {
  const double deficit = std::abs(1.0 - norm_squared(amplitudes));
  if (!(deficit <= kNormTolerance)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "state is not normalized: norm deficit |1 - <psi|psi>| = " << deficit;
    throw Error(ErrorCode::NonNormalizedState, msg.str());
  }
}

StateVector StateVector::normalized(const Amplitudes& amplitudes) {
  const double norm = std::sqrt(norm_squared(amplitudes));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::NonNormalizedState, "cannot normalize a zero or non-finite state");
  }
  Amplitudes scaled = amplitudes;
  for (auto& a : scaled) a /= norm;
  return StateVector(scaled);
}

StateVector StateVector::basis(int index) {
  if (index < 0 || index >= 8) {
    throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  }
  Amplitudes amplitudes{};
  amplitudes[index] = 1.0;
  return StateVector(amplitudes);
}

BlochVector::BlochVector(double x, double y, double z) : v_{x, y, z} {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "Bloch vector (" << x << ", " << y << ", " << z << ") has norm " << norm
        << ", expected 1";
    throw Error(ErrorCode::NonUnitBloch, msg.str());
  }
}

BlochVector BlochVector::xz_plane(double angle) {
  return {Unchecked{}, std::sin(angle), 0.0, std::cos(angle)};
}

BlochVector BlochVector::xy_plane(double angle) {
  return {Unchecked{}, std::cos(angle), std::sin(angle), 0.0};
}

BlochVector BlochVector::operator-() const noexcept {
  return {Unchecked{}, -v_[0], -v_[1], -v_[2]};
}

const BlochVector& SettingTriple::operator[](Party p) const noexcept {
  switch (p) {
    case Party::A: return a;
    case Party::B: return b;
    case Party::C: break;
  }
  return c;
}

StateVector ghz_state() {
  const double h = 1.0 / std::sqrt(2.0);
  Amplitudes amplitudes{};
  amplitudes[0b000] = h;
  amplitudes[0b111] = h;
  return StateVector(amplitudes);
}

StateVector w_state() {
  const double h = 1.0 / std::sqrt(3.0);
  Amplitudes amplitudes{};
  amplitudes[0b001] = h;
  amplitudes[0b010] = h;
  amplitudes[0b100] = h;
  return StateVector(amplitudes);
}

double expectation(const StateVector& state, std::span<const LocalSetting> settings) {
  if (settings.empty()) {
    throw Error(ErrorCode::InvalidArgument, "expectation needs at least one local setting");
  }
  PartySet seen;
  Amplitudes phi = state.amplitudes();
  for (const auto& setting : settings) {
    if (seen.contains(setting.party)) {
      throw Error(ErrorCode::DuplicateParty, std::string("party ") +
                                                 party_letter(setting.party) +
                                                 " appears more than once");
    }
    seen.insert(setting.party);
    apply_observable(phi, setting.party, setting.bloch);
  }

  Amplitude value = 0.0;
  const Amplitudes& psi = state.amplitudes();
  for (int i = 0; i < 8; ++i) value += std::conj(psi[i]) * phi[i];
  if (std::abs(value.imag()) > kImaginaryResidueTolerance) {
    throw Error(ErrorCode::InternalConsistency,
                "expectation of a Hermitian observable has a non-negligible imaginary part");
  }
  return value.real();
}

double expectation(const StateVector& state, std::initializer_list<LocalSetting> settings) {
  return expectation(state, std::span<const LocalSetting>(settings.begin(), settings.size()));
}

double joint_probability(const StateVector& state, const SettingTriple& settings,
                         const OutcomeTriple& outcome) {
  Amplitudes phi = state.amplitudes();
  for (Party p : kParties) apply_projector(phi, p, settings[p], outcome[p]);
  return norm_squared(phi);
}

Distribution3 quantum_distribution(const StateVector& state, const SettingTriple& settings) {
  Distribution3 d;
  for (int i = 0; i < kOutcomeCount; ++i) {
    d.p[i] = joint_probability(state, settings, OutcomeTriple::from_index(i));
  }
  return d;
}

CorrelationTensor correlation_tensor(const StateVector& state, const SettingTriple& settings) {
  CorrelationTensor t;
  for (Component c : kComponents) {
    std::vector<LocalSetting> locals;
    for (Party p : component_parties(c).members()) locals.push_back({p, settings[p]});
    t[c] = expectation(state, locals);
  }
  return t;
}

}  // namespace hcsig
