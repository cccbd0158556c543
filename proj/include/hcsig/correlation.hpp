#pragma once

// Correlator tensors and outcome distributions for three dichotomic parties.
//
// A distribution over the eight outcomes and its seven correlators are two
// coordinate systems for the same 8-dimensional affine space:
//
//   p(xi) = (1/8) [1 + sum_S chi_S(xi) E_S]
//
// where S ranges over the nonempty subsets of {A, B, C} and chi_S(xi) is the
// product of the outcome signs of the parties in S. Nothing here assumes
// positivity: a tensor may map to a "distribution" with negative entries,
// and is_valid is the query that separates the two.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "hcsig/types.hpp"

namespace hcsig {

inline constexpr double kDefaultValidityTolerance = 1e-9;

enum class Component : std::uint8_t { a, b, c, ab, ac, bc, abc };

inline constexpr std::array<Component, 7> kComponents{
    Component::a,  Component::b,  Component::c,  Component::ab,
    Component::ac, Component::bc, Component::abc};

constexpr int component_index(Component c) noexcept { return static_cast<int>(c); }

// "e_a", "e_ab", ... (the serialized field names).
std::string_view component_name(Component c) noexcept;
std::optional<Component> component_from_name(std::string_view name) noexcept;

PartySet component_parties(Component c) noexcept;
bool is_pair(Component c) noexcept;
// The pair component for two distinct parties.
Component pair_component(Party x, Party y);

// chi_S(xi): product of the outcome signs of the parties in `c`.
int character(int outcome_index, Component c) noexcept;

struct CorrelationTensor {
  // Indexed by component_index: e_a, e_b, e_c, e_ab, e_ac, e_bc, e_abc.
  std::array<double, 7> values{};

  double& operator[](Component c) noexcept { return values[component_index(c)]; }
  double operator[](Component c) const noexcept { return values[component_index(c)]; }

  friend bool operator==(const CorrelationTensor&, const CorrelationTensor&) = default;
};

struct Distribution3 {
  std::array<double, 8> p{};  // outcome index order, "+++" first

  double& operator[](int outcome_index) { return p.at(outcome_index); }
  double operator[](int outcome_index) const { return p.at(outcome_index); }
  double operator[](const OutcomeTriple& o) const { return p[o.index()]; }

  double sum() const noexcept;
  double min() const noexcept;
};

// Distribution over the outcomes of a subset of parties. Entries are indexed
// like Distribution3 restricted to `parties`: the first member is the most
// significant bit.
struct MarginalDistribution {
  PartySet parties;
  std::vector<double> p;

  double sum() const noexcept;
  // Outcome signs of the members, in member order.
  double at(std::initializer_list<int> signs) const;
};

using Distribution1 = MarginalDistribution;
using Distribution2 = MarginalDistribution;

// Throws Error(ComponentOutOfRange) if a component lies outside [-1, 1].
// Negative probabilities are returned as-is.
Distribution3 probabilities_from_tensor(const CorrelationTensor& t);

// The same expansion without the range check.
Distribution3 raw_probabilities(const CorrelationTensor& t) noexcept;

// Throws Error(NotNormalized) if the entries do not sum to 1 within 1e-9.
CorrelationTensor tensor_from_probabilities(const Distribution3& d);

// Smallest of the eight probabilities; no range checks.
double min_probability(const CorrelationTensor& t) noexcept;

// True iff every probability is >= -tol.
bool is_valid(const CorrelationTensor& t, double tol = kDefaultValidityTolerance) noexcept;

// Throws Error(EmptySubset).
MarginalDistribution marginal(const Distribution3& d, PartySet parties);

// Max absolute difference between the `spectators` marginals of d1 and d2.
double no_signaling_violation(const Distribution3& d1, const Distribution3& d2,
                              PartySet spectators);

// Independent joint distribution of two single-party marginals.
// Throws Error(NotNormalized), or Error(InvalidArgument) unless the inputs
// are single-party marginals of two different parties.
Distribution2 product_distribution(const Distribution1& first, const Distribution1& second);

// Expectation of the product of the member outcomes.
double correlator(const MarginalDistribution& m);

}  // namespace hcsig
