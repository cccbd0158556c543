#include "hcsig/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <numeric>
#include <sstream>

#include "hcsig/errors.hpp"

namespace hcsig {
namespace {

constexpr double kRangeSlack = 1e-12;
constexpr double kNormalizationTolerance = 1e-9;

// Index of a full outcome restricted to the members of `parties`.
int restricted_index(int outcome_index, PartySet parties) {
  int index = 0;
  for (Party p : parties.members()) {
    index = (index << 1) | ((outcome_index >> party_shift(p)) & 1);
  }
  return index;
}

void require_normalized(double total, const char* what) {
  if (!(std::abs(total - 1.0) <= kNormalizationTolerance)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << what << " is not normalized: entries sum to " << total;
    throw Error(ErrorCode::NotNormalized, msg.str());
  }
}

}  // namespace

std::string_view component_name(Component c) noexcept {
  switch (c) {
    case Component::a: return "e_a";
    case Component::b: return "e_b";
    case Component::c: return "e_c";
    case Component::ab: return "e_ab";
    case Component::ac: return "e_ac";
    case Component::bc: return "e_bc";
    case Component::abc: return "e_abc";
  }
  return "";
}

std::optional<Component> component_from_name(std::string_view name) noexcept {
  for (Component c : kComponents) {
    if (component_name(c) == name) return c;
  }
  return std::nullopt;
}

PartySet component_parties(Component c) noexcept {
  switch (c) {
    case Component::a: return {Party::A};
    case Component::b: return {Party::B};
    case Component::c: return {Party::C};
    case Component::ab: return {Party::A, Party::B};
    case Component::ac: return {Party::A, Party::C};
    case Component::bc: return {Party::B, Party::C};
    case Component::abc: return {Party::A, Party::B, Party::C};
  }
  return {};
}

bool is_pair(Component c) noexcept { return component_parties(c).size() == 2; }

Component pair_component(Party x, Party y) {
  const PartySet wanted{x, y};
  for (Component c : kComponents) {
    if (is_pair(c) && component_parties(c) == wanted) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "a pair component needs two distinct parties");
}

int character(int outcome_index, Component c) noexcept {
  int sign = 1;
  for (Party p : kParties) {
    if (component_parties(c).contains(p)) sign *= outcome_sign(outcome_index, p);
  }
  return sign;
}

double Distribution3::sum() const noexcept { return std::accumulate(p.begin(), p.end(), 0.0); }

double Distribution3::min() const noexcept { return *std::min_element(p.begin(), p.end()); }

double MarginalDistribution::sum() const noexcept {
  return std::accumulate(p.begin(), p.end(), 0.0);
}

double MarginalDistribution::at(std::initializer_list<int> signs) const {
  if (static_cast<int>(signs.size()) != parties.size()) {
    throw Error(ErrorCode::InvalidArgument, "wrong number of outcome signs for marginal");
  }
  int index = 0;
  for (int s : signs) {
    if (s != 1 && s != -1) throw Error(ErrorCode::InvalidArgument, "outcome sign must be +/-1");
    index = (index << 1) | (s < 0 ? 1 : 0);
  }
  return p[index];
}

Distribution3 probabilities_from_tensor(const CorrelationTensor& t) {
  for (Component c : kComponents) {
    if (!(std::abs(t[c]) <= 1.0 + kRangeSlack)) {
      std::ostringstream msg;
      msg.precision(12);
      msg << component_name(c) << " = " << t[c] << " lies outside [-1, 1]";
      throw Error(ErrorCode::ComponentOutOfRange, msg.str());
    }
  }
  return raw_probabilities(t);
}

Distribution3 raw_probabilities(const CorrelationTensor& t) noexcept {
  Distribution3 d;
  for (int i = 0; i < kOutcomeCount; ++i) {
    double acc = 1.0;
    for (Component c : kComponents) acc += character(i, c) * t[c];
    d.p[i] = acc / 8.0;
  }
  return d;
}

CorrelationTensor tensor_from_probabilities(const Distribution3& d) {
  require_normalized(d.sum(), "distribution");
  CorrelationTensor t;
  for (Component c : kComponents) {
    double acc = 0.0;
    for (int i = 0; i < kOutcomeCount; ++i) acc += character(i, c) * d.p[i];
    t[c] = acc;
  }
  return t;
}

double min_probability(const CorrelationTensor& t) noexcept { return raw_probabilities(t).min(); }

bool is_valid(const CorrelationTensor& t, double tol) noexcept {
  return min_probability(t) >= -tol;
}

MarginalDistribution marginal(const Distribution3& d, PartySet parties) {
  if (parties.empty()) throw Error(ErrorCode::EmptySubset, "marginal over an empty party set");
  MarginalDistribution m{parties, std::vector<double>(std::size_t{1} << parties.size(), 0.0)};
  for (int i = 0; i < kOutcomeCount; ++i) m.p[restricted_index(i, parties)] += d.p[i];
  return m;
}

double no_signaling_violation(const Distribution3& d1, const Distribution3& d2,
                              PartySet spectators) {
  const auto m1 = marginal(d1, spectators);
  const auto m2 = marginal(d2, spectators);
  double worst = 0.0;
  for (std::size_t i = 0; i < m1.p.size(); ++i) worst = std::max(worst, std::abs(m1.p[i] - m2.p[i]));
  return worst;
}

Distribution2 product_distribution(const Distribution1& first, const Distribution1& second) {
  if (first.parties.size() != 1 || second.parties.size() != 1 || first.p.size() != 2 ||
      second.p.size() != 2) {
    throw Error(ErrorCode::InvalidArgument, "product_distribution takes single-party marginals");
  }
  if ((first.parties.mask() & second.parties.mask()) != 0) {
    throw Error(ErrorCode::InvalidArgument, "product_distribution needs two different parties");
  }
  require_normalized(first.sum(), "first marginal");
  require_normalized(second.sum(), "second marginal");

  // Result is indexed in A, B, C order regardless of argument order.
  const bool swapped = first.parties.mask() > second.parties.mask();
  const Distribution1& lead = swapped ? second : first;
  const Distribution1& trail = swapped ? first : second;
  PartySet joint = lead.parties;
  joint.insert(trail.parties.members().front());

  Distribution2 out{joint, std::vector<double>(4, 0.0)};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.p[(i << 1) | j] = lead.p[i] * trail.p[j];
  }
  return out;
}

double correlator(const MarginalDistribution& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.p.size(); ++i) {
    const int parity = std::popcount(static_cast<unsigned>(i)) & 1;
    acc += (parity != 0 ? -1.0 : 1.0) * m.p[i];
  }
  return acc;
}

}  // namespace hcsig
