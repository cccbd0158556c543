#pragma once

// Exact three-qubit quantum mechanics: pure states, dichotomic observables
// n.sigma, and the joint probabilities and correlators they predict.

#include <array>
#include <complex>
#include <span>

#include "hcsig/correlation.hpp"
#include "hcsig/types.hpp"

namespace hcsig {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kImaginaryResidueTolerance = 1e-12;

// Normalized pure state of three qubits, basis order |000>..|111>.
class StateVector {
 public:
  // Throws Error(NonNormalizedState) if sum |a|^2 deviates from 1 by more
  // than kNormTolerance.
  explicit StateVector(const std::array<Amplitude, 8>& amplitudes);

  // Rescales arbitrary nonzero amplitudes to unit norm.
  static StateVector normalized(const std::array<Amplitude, 8>& amplitudes);
  static StateVector basis(int index);

  const std::array<Amplitude, 8>& amplitudes() const noexcept { return amplitudes_; }
  const Amplitude& operator[](int index) const { return amplitudes_.at(index); }

 private:
  std::array<Amplitude, 8> amplitudes_;
};

double norm_squared(const std::array<Amplitude, 8>& amplitudes) noexcept;

// Unit Bloch vector; the observable n.sigma has eigenvalues +1 and -1.
class BlochVector {
 public:
  // Throws Error(NonUnitBloch) unless |(x, y, z)| = 1 within kNormTolerance.
  BlochVector(double x, double y, double z);

  static BlochVector sigma_x() { return {1.0, 0.0, 0.0}; }
  static BlochVector sigma_y() { return {0.0, 1.0, 0.0}; }
  static BlochVector sigma_z() { return {0.0, 0.0, 1.0}; }
  // Direction at `angle` from +z towards +x (the x-z measurement plane).
  static BlochVector xz_plane(double angle);
  // Direction at `angle` from +x towards +y.
  static BlochVector xy_plane(double angle);

  double x() const noexcept { return v_[0]; }
  double y() const noexcept { return v_[1]; }
  double z() const noexcept { return v_[2]; }
  const std::array<double, 3>& components() const noexcept { return v_; }

  BlochVector operator-() const noexcept;

  friend bool operator==(const BlochVector&, const BlochVector&) = default;

 private:
  struct Unchecked {};
  BlochVector(Unchecked, double x, double y, double z) noexcept : v_{x, y, z} {}

  std::array<double, 3> v_;
};

struct LocalSetting {
  Party party;
  BlochVector bloch;
};

// One measurement direction per party, indexed by party_index.
struct SettingTriple {
  BlochVector a;
  BlochVector b;
  BlochVector c;

  const BlochVector& operator[](Party p) const noexcept;

  static SettingTriple all(const BlochVector& n) { return {n, n, n}; }
};

StateVector ghz_state();
StateVector w_state();

// <psi| O |psi> with O = tensor product of n.sigma on the listed parties and
// the identity elsewhere. Throws Error(DuplicateParty) for a repeated party
// and Error(InvalidArgument) for an empty list.
double expectation(const StateVector& state, std::span<const LocalSetting> settings);
double expectation(const StateVector& state, std::initializer_list<LocalSetting> settings);

// || Pi_A (x) Pi_B (x) Pi_C |psi> ||^2 with Pi = (I + xi n.sigma) / 2.
double joint_probability(const StateVector& state, const SettingTriple& settings,
                         const OutcomeTriple& outcome);

// All eight joint probabilities in outcome index order.
Distribution3 quantum_distribution(const StateVector& state, const SettingTriple& settings);

// The seven correlators E(.) for one setting per party.
CorrelationTensor correlation_tensor(const StateVector& state, const SettingTriple& settings);

}  // namespace hcsig
