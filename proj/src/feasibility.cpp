#include "hcsig/feasibility.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "hcsig/errors.hpp"

namespace hcsig {
namespace {

constexpr double kSingularPivot = 1e-12;
constexpr double kTieTolerance = 1e-12;
constexpr double kFixedRangeSlack = 1e-12;

// p_i(x) = (offset[i] + sum_k coeff[i][k] x_k) / 8 for the eight outcomes.
// Coefficients are the characters chi_S(xi) of the free components, so the
// sign bookkeeping comes from `character` rather than a hand-written table.
struct AffineProbabilities {
  int dims = 0;
  std::array<double, 8> offset{};
  std::array<std::array<double, kMaxFreeComponents>, 8> coeff{};

  double at(int i, std::span<const double> x) const {
    double acc = offset[i];
    for (int k = 0; k < dims; ++k) acc += coeff[i][k] * x[k];
    return acc / 8.0;
  }

  double min_at(std::span<const double> x) const {
    double lowest = at(0, x);
    for (int i = 1; i < kOutcomeCount; ++i) lowest = std::min(lowest, at(i, x));
    return lowest;
  }
};

AffineProbabilities build_system(const ConstraintSpec& spec) {
  const auto free = spec.free_components();
  if (static_cast<int>(free.size()) > kMaxFreeComponents) {
    throw Error(ErrorCode::TooManyFreeComponents,
                std::to_string(free.size()) + " free components; at most " +
                    std::to_string(kMaxFreeComponents) + " are supported");
  }
  const CorrelationTensor fixed = spec.resolved_fixed_values();

  AffineProbabilities sys;
  sys.dims = static_cast<int>(free.size());
  for (int i = 0; i < kOutcomeCount; ++i) {
    sys.offset[i] = 1.0;
    for (Component c : kComponents) {
      if (!spec.is_free(c)) sys.offset[i] += character(i, c) * fixed[c];
    }
    for (int k = 0; k < sys.dims; ++k) sys.coeff[i][k] = character(i, free[k]);
  }
  return sys;
}

// Dense Gaussian elimination with partial pivoting; nullopt when singular.
std::optional<std::vector<double>> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < kSingularPivot) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= factor * a[col][k];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return x;
}

// Outcome subsets of the given size as bitmasks over 0..7, ascending.
std::vector<unsigned> subsets_of_size(int size) {
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < (1u << kOutcomeCount); ++mask) {
    if (std::popcount(mask) == size) out.push_back(mask);
  }
  return out;
}

bool near(const Point& x, const Point& y, double tol) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (std::abs(x[k] - y[k]) > tol) return false;
  }
  return true;
}

void push_unique(std::vector<Point>& points, Point p) {
  for (const auto& q : points) {
    if (near(p, q, kVertexDedupTolerance)) return;
  }
  points.push_back(std::move(p));
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= kVertexDedupTolerance * kVertexDedupTolerance) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= kVertexDedupTolerance * kVertexDedupTolerance) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

int affine_rank(const std::vector<Point>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Point d(pts[i].size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = pts[i][k] - pts[0][k];
    rows.push_back(std::move(d));
  }
  const std::size_t cols = pts[0].size();
  int rank = 0;
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t pivot = rank;
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
    }
    if (std::abs(rows[pivot][col]) <= kVertexDedupTolerance) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const double factor = rows[r][col] / rows[rank][col];
      for (std::size_t k = col; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

MaxMinResult max_min_of(const AffineProbabilities& sys) {
  if (sys.dims == 0) return {sys.min_at({}), {}};

  // The optimum of max_x min_i p_i(x) is a vertex of the epigraph
  // {(x, t) : t <= p_i(x)}, where dims + 1 of the p_i coincide.
  const std::size_t n = static_cast<std::size_t>(sys.dims) + 1;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<Point> best_points;
  for (unsigned mask : subsets_of_size(sys.dims + 1)) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int i = 0; i < kOutcomeCount; ++i) {
      if (((mask >> i) & 1u) == 0) continue;
      std::vector<double> row(n);
      for (int k = 0; k < sys.dims; ++k) row[k] = sys.coeff[i][k] / 8.0;
      row[n - 1] = -1.0;
      a.push_back(std::move(row));
      b.push_back(-sys.offset[i] / 8.0);
    }
    const auto sol = solve(std::move(a), std::move(b));
    if (!sol) continue;
    const Point x(sol->begin(), sol->end() - 1);
    const double t = sol->back();
    if (sys.min_at(x) < t - kTieTolerance) continue;
    if (t > best + kTieTolerance) {
      best = t;
      best_points.clear();
    }
    if (t >= best - kTieTolerance) push_unique(best_points, x);
  }
  if (best_points.empty()) {
    throw Error(ErrorCode::InternalConsistency, "max-min enumeration found no epigraph vertex");
  }

  // Ties span an optimal face; its vertex centroid lies on that face.
  Point centroid(sys.dims, 0.0);
  for (const auto& p : best_points) {
    for (int k = 0; k < sys.dims; ++k) centroid[k] += p[k];
  }
  for (auto& v : centroid) v /= static_cast<double>(best_points.size());
  return {sys.min_at(centroid), centroid};
}

}  // namespace

ConstraintSpec ConstraintSpec::fixed_to(const CorrelationTensor& t) {
  ConstraintSpec spec;
  for (Component c : kComponents) spec.fix(c, t[c]);
  return spec;
}

ConstraintSpec& ConstraintSpec::fix(Component c, double value) {
  entries_[component_index(c)] = Fixed{value};
  return *this;
}

ConstraintSpec& ConstraintSpec::release(Component c) {
  entries_[component_index(c)] = Free{};
  return *this;
}

ConstraintSpec& ConstraintSpec::pin_to_product(Component pair) {
  if (!is_pair(pair)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(component_name(pair)) + " is not a pair correlator");
  }
  entries_[component_index(pair)] = ProductOfSingles{};
  return *this;
}

bool ConstraintSpec::is_free(Component c) const noexcept {
  return std::holds_alternative<Free>(entries_[component_index(c)]);
}

std::vector<Component> ConstraintSpec::free_components() const {
  std::vector<Component> out;
  for (Component c : kComponents) {
    if (is_free(c)) out.push_back(c);
  }
  return out;
}

CorrelationTensor ConstraintSpec::resolved_fixed_values() const {
  CorrelationTensor t;
  for (Component c : kComponents) {
    if (const auto* fixed = std::get_if<Fixed>(&(*this)[c])) {
      if (!(std::abs(fixed->value) <= 1.0 + kFixedRangeSlack)) {
        std::ostringstream msg;
        msg.precision(12);
        msg << component_name(c) << " fixed to " << fixed->value << ", outside [-1, 1]";
        throw Error(ErrorCode::FixedValueOutOfRange, msg.str());
      }
      t[c] = fixed->value;
    }
  }
  for (Component c : kComponents) {
    if (!std::holds_alternative<ProductOfSingles>((*this)[c])) continue;
    double product = 1.0;
    for (Party p : component_parties(c).members()) {
      const Component single = kComponents[party_index(p)];
      if (!std::holds_alternative<Fixed>((*this)[single])) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(component_name(c)) + " is pinned to a product but " +
                        std::string(component_name(single)) + " is not fixed");
      }
      product *= t[single];
    }
    t[c] = product;
  }
  return t;
}

CorrelationTensor ConstraintSpec::substitute(std::span<const double> free_values) const {
  const auto free = free_components();
  if (free_values.size() != free.size()) {
    throw Error(ErrorCode::InvalidArgument, "wrong number of free values");
  }
  CorrelationTensor t = resolved_fixed_values();
  for (std::size_t k = 0; k < free.size(); ++k) t[free[k]] = free_values[k];
  return t;
}

MaxMinResult max_min_probability(const ConstraintSpec& spec) {
  return max_min_of(build_system(spec));
}

FeasibleRegion feasible_region(const ConstraintSpec& spec, double tol) {
  const AffineProbabilities sys = build_system(spec);
  FeasibleRegion region;
  region.free_components = spec.free_components();

  const MaxMinResult certificate = max_min_of(sys);
  if (certificate.value < -tol) return region;
  region.empty = false;

  if (sys.dims == 0) {
    region.affine_dimension = 0;
    region.vertices.push_back({});
    return region;
  }

  // Candidate vertices: points where `dims` of the eight probabilities vanish.
  std::vector<Point> candidates;
  for (unsigned mask : subsets_of_size(sys.dims)) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int i = 0; i < kOutcomeCount; ++i) {
      if (((mask >> i) & 1u) == 0) continue;
      a.emplace_back(sys.coeff[i].begin(), sys.coeff[i].begin() + sys.dims);
      b.push_back(-sys.offset[i]);
    }
    const auto sol = solve(std::move(a), std::move(b));
    if (sol && sys.min_at(*sol) >= -tol) push_unique(candidates, *sol);
  }
  // Within tolerance of an empty region the exact vertices can all miss.
  if (candidates.empty()) candidates.push_back(certificate.argpoint);

  switch (sys.dims) {
    case 1: {
      const auto [lo, hi] = std::minmax_element(candidates.begin(), candidates.end());
      region.vertices.push_back(*lo);
      if (near(*lo, *hi, kVertexDedupTolerance)) {
        region.affine_dimension = 0;
      } else {
        region.vertices.push_back(*hi);
        region.affine_dimension = 1;
      }
      break;
    }
    case 2:
      region.vertices = convex_hull(std::move(candidates));
      region.affine_dimension = std::min(2, static_cast<int>(region.vertices.size()) - 1);
      break;
    default:
      std::sort(candidates.begin(), candidates.end());
      region.vertices = std::move(candidates);
      region.affine_dimension = affine_rank(region.vertices);
      break;
  }
  return region;
}

std::optional<Interval> project_interval(const FeasibleRegion& region, Component c) {
  const auto it = std::find(region.free_components.begin(), region.free_components.end(), c);
  if (it == region.free_components.end()) {
    throw Error(ErrorCode::ComponentNotFree,
                std::string(component_name(c)) + " is not a free component of the region");
  }
  if (region.empty) return std::nullopt;
  const auto k = static_cast<std::size_t>(it - region.free_components.begin());
  Interval out{region.vertices.front()[k], region.vertices.front()[k]};
  for (const auto& v : region.vertices) {
    out.lo = std::min(out.lo, v[k]);
    out.hi = std::max(out.hi, v[k]);
  }
  return out;
}

ConstraintSpec visibility_spec(const CorrelationTensor& qm, Component scaled, double v) {
  if (!is_pair(scaled)) {
    throw Error(ErrorCode::InvalidArgument,
                "visibility scales a pair correlator, not " + std::string(component_name(scaled)));
  }
  ConstraintSpec spec = ConstraintSpec::fixed_to(qm);
  spec.fix(scaled, v * qm[scaled]);
  spec.release(Component::abc);
  return spec;
}

VisibilityRange visibility_range(const CorrelationTensor& qm, Component scaled, double cap,
                                 double tol) {
  if (!is_pair(scaled)) {
    throw Error(ErrorCode::InvalidArgument,
                "visibility scales a pair correlator, not " + std::string(component_name(scaled)));
  }
  if (std::abs(qm[scaled]) < kSingularPivot) {
    throw Error(ErrorCode::ZeroQMValue, std::string("QM value of ") +
                                            std::string(component_name(scaled)) +
                                            " is zero; visibility is undefined");
  }
  if (cap < 1.0) throw Error(ErrorCode::InvalidArgument, "visibility cap must be at least 1");
  // |V * qm| may not exceed 1.
  cap = std::max(1.0, std::min(cap, 1.0 / std::abs(qm[scaled])));

  const auto feasible = [&](double v) {
    return max_min_probability(visibility_spec(qm, scaled, v)).value >= -tol;
  };
  if (!feasible(1.0)) {
    throw Error(ErrorCode::NonMonotonePredicate,
                "visibility 1 (the QM tensor) is not feasible; the input is not a QM tensor");
  }

  // Feasible set is an interval containing 1; bisect each end.
  const auto boundary = [&](double inside, double outside) {
    while (std::abs(inside - outside) > kBisectionPrecision) {
      const double mid = 0.5 * (inside + outside);
      (feasible(mid) ? inside : outside) = mid;
    }
    return inside;
  };
  VisibilityRange range{};
  range.v_min = feasible(0.0) ? 0.0 : boundary(1.0, 0.0);
  range.v_max = feasible(cap) ? cap : boundary(1.0, cap);

  // Consistency: interior feasible, exterior (past a margin) infeasible.
  constexpr int kSamples = 8;
  constexpr double kMargin = 1e-6;
  for (int s = 0; s <= kSamples; ++s) {
    const double v = range.v_min + (range.v_max - range.v_min) * s / kSamples;
    const double below = (range.v_min - kMargin) * s / kSamples;
    const double above = range.v_max + kMargin + (cap - range.v_max - kMargin) * s / kSamples;
    const bool bad_inside = !feasible(v);
    const bool bad_below = range.v_min > kMargin && feasible(below);
    const bool bad_above = cap - range.v_max > kMargin && feasible(above);
    if (bad_inside || bad_below || bad_above) {
      throw Error(ErrorCode::NonMonotonePredicate,
                  "visibility feasibility predicate is not an interval");
    }
  }
  return range;
}

double visibility_max(const CorrelationTensor& qm, Component scaled, double tol) {
  return visibility_range(qm, scaled, 1.0, tol).v_max;
}

double visibility_min(const CorrelationTensor& qm, Component scaled, double tol) {
  return visibility_range(qm, scaled, 1.0, tol).v_min;
}

}  // namespace hcsig
