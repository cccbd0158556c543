#pragma once

// Exact feasibility geometry for partially fixed correlator tensors.
//
// Fixing some components of a CorrelationTensor and leaving the rest free
// turns each of the eight outcome probabilities into an affine function of
// the free components. The set of free values for which all eight are
// non-negative is a convex polytope (bounded, since the eight probabilities
// sum to one). With at most three free components it is small enough to be
// enumerated vertex by vertex, which is what this module does instead of
// calling an LP solver.

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hcsig/correlation.hpp"

namespace hcsig {

inline constexpr int kMaxFreeComponents = 3;
inline constexpr double kVertexDedupTolerance = 1e-9;
inline constexpr double kBisectionPrecision = 1e-9;

struct Free {
  friend bool operator==(Free, Free) = default;
};
struct Fixed {
  double value;
  friend bool operator==(Fixed, Fixed) = default;
};
// Pair component pinned to the product of its two (fixed) singles.
struct ProductOfSingles {
  friend bool operator==(ProductOfSingles, ProductOfSingles) = default;
};

using ComponentConstraint = std::variant<Free, Fixed, ProductOfSingles>;

class ConstraintSpec {
 public:
  // Every component free.
  ConstraintSpec() = default;

  // Every component fixed to `t`.
  static ConstraintSpec fixed_to(const CorrelationTensor& t);

  ConstraintSpec& fix(Component c, double value);
  ConstraintSpec& release(Component c);
  // Throws Error(InvalidArgument) if `pair` is not a pair component.
  ConstraintSpec& pin_to_product(Component pair);

  const ComponentConstraint& operator[](Component c) const noexcept {
    return entries_[component_index(c)];
  }
  bool is_free(Component c) const noexcept;
  std::vector<Component> free_components() const;

  // Fixed values with products resolved; entries for free components are 0.
  // Throws Error(FixedValueOutOfRange), or Error(InvalidArgument) when a
  // product refers to a single that is not fixed.
  CorrelationTensor resolved_fixed_values() const;

  // The full tensor obtained by substituting `free_values` (in
  // free_components() order) for the free components.
  CorrelationTensor substitute(std::span<const double> free_values) const;

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;

 private:
  std::array<ComponentConstraint, 7> entries_{};
};

struct Interval {
  double lo;
  double hi;

  double width() const noexcept { return hi - lo; }
  bool contains(double v, double slack = 0.0) const noexcept {
    return v >= lo - slack && v <= hi + slack;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

using Point = std::vector<double>;

struct FeasibleRegion {
  std::vector<Component> free_components;
  bool empty = true;
  // Dimension of the affine hull of the region: 0 for a point, 1 for a
  // segment, ... ; -1 when empty.
  int affine_dimension = -1;
  // Dimension 1: the interval endpoints in ascending order. Dimension 2: the
  // polygon boundary in counter-clockwise order. Dimension 3: lexicographic.
  // A point region has exactly one vertex; for zero free components that
  // vertex has no coordinates.
  std::vector<Point> vertices;

  int dimension() const noexcept { return static_cast<int>(free_components.size()); }
};

struct MaxMinResult {
  double value;     // max over free values of the smallest probability
  Point argpoint;   // free values attaining it, in free_components() order
};

// Throws Error(TooManyFreeComponents), Error(FixedValueOutOfRange).
FeasibleRegion feasible_region(const ConstraintSpec& spec,
                               double tol = kDefaultValidityTolerance);

// Throws Error(ComponentNotFree) if `c` is not a coordinate of `region`.
std::optional<Interval> project_interval(const FeasibleRegion& region, Component c);

MaxMinResult max_min_probability(const ConstraintSpec& spec);

// The Condition-1 spec used for visibility queries: singles and the two
// other pairs fixed to `qm`, `scaled` fixed to v * qm[scaled], triple free.
ConstraintSpec visibility_spec(const CorrelationTensor& qm, Component scaled, double v);

struct VisibilityRange {
  double v_min;
  double v_max;
};

// Feasible visibilities within [0, cap], found by bisection over the
// feasibility predicate. Throws Error(ZeroQMValue) when qm[scaled] is zero,
// Error(InvalidArgument) unless `scaled` is a pair component, and
// Error(NonMonotonePredicate) if the predicate does not describe an interval
// that contains V = 1.
VisibilityRange visibility_range(const CorrelationTensor& qm, Component scaled, double cap,
                                 double tol = kDefaultValidityTolerance);

// Largest feasible V in [0, 1].
double visibility_max(const CorrelationTensor& qm, Component scaled,
                      double tol = kDefaultValidityTolerance);
// Smallest feasible V in [0, 1].
double visibility_min(const CorrelationTensor& qm, Component scaled,
                      double tol = kDefaultValidityTolerance);

}  // namespace hcsig
