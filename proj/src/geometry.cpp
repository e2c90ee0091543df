#include "dsonc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "dsonc/detail/exact_linalg.hpp"
#include "dsonc/error.hpp"
#include "dsonc/lpcore.hpp"

namespace dsonc {

std::vector<double> Point::to_double() const {
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(dsonc::to_double(c));
  return out;
}

bool Point::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return is_integer(c); });
}

bool Point::is_even() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) {
    return is_integer(c) && mpz_even_p(c.get_num_mpz_t()) != 0;
  });
}

bool Point::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

Point Point::operator+(const Point& other) const {
  if (dim() != other.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimensions differ");
  std::vector<Rational> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = coords_[i] + other.coords_[i];
  return Point(std::move(out));
}

Point Point::operator-(const Point& other) const {
  if (dim() != other.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimensions differ");
  std::vector<Rational> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = coords_[i] - other.coords_[i];
  return Point(std::move(out));
}

Point Point::scaled(const Rational& factor) const {
  std::vector<Rational> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) out[i] = coords_[i] * factor;
  return Point(std::move(out));
}

std::string Point::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << dsonc::to_string(coords_[i]);
  }
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(a.coords_[i], b.coords_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return a.dim() <=> b.dim();
}

double dot(std::span<const double> x, const Point& alpha) {
  if (x.size() != alpha.dim()) throw Error(ErrorCode::DimensionMismatch, "evaluation point dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * to_double(alpha[i]);
  return s;
}

SupportSet::SupportSet(std::size_t dim, std::vector<Point> points) : dim_(dim), points_(std::move(points)) {
  if (dim_ == 0) throw Error(ErrorCode::InvalidArgument, "support dimension must be positive");
  std::set<Point> seen;
  for (const auto& p : points_) {
    if (p.dim() != dim_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "point " + p.to_string() + " has dimension " + std::to_string(p.dim()) + ", expected " +
                      std::to_string(dim_));
    }
    if (!seen.insert(p).second) throw Error(ErrorCode::DuplicatePoint, "duplicate point " + p.to_string());
  }
}

std::optional<std::size_t> SupportSet::index_of(const Point& p) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == p) return i;
  }
  return std::nullopt;
}

SignedSupport::SignedSupport(SupportSet base, const std::vector<bool>& negative) : base_(std::move(base)) {
  if (negative.size() != base_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "sign vector length differs from support size");
  }
  for (std::size_t i = 0; i < negative.size(); ++i) (negative[i] ? negative_ : positive_).push_back(i);
  std::vector<std::size_t> offending;
  std::string listing;
  for (std::size_t v : hull_vertices(base_)) {
    if (negative[v]) {
      offending.push_back(v);
      listing += (listing.empty() ? "" : ", ") + base_[v].to_string();
    }
  }
  if (!offending.empty()) {
    throw VertexSignViolation(std::move(offending), "hull vertices with negative sign: " + listing);
  }
}

namespace {

// Rows: coordinates then the all-ones row; columns: the given points.
RationalMatrix affine_matrix(std::span<const Point> points, std::size_t dim) {
  RationalMatrix m(dim + 1, std::vector<Rational>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].dim() != dim) throw Error(ErrorCode::DimensionMismatch, "point dimensions differ");
    for (std::size_t i = 0; i < dim; ++i) m[i][j] = points[j][i];
    m[dim][j] = 1;
  }
  return m;
}

std::vector<Rational> affine_rhs(const Point& p) {
  std::vector<Rational> b(p.coords().begin(), p.coords().end());
  b.emplace_back(1);
  return b;
}

bool all_positive(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) > 0; });
}

bool all_nonnegative(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) >= 0; });
}

}  // namespace

std::vector<double> Circuit::lambda_double() const {
  std::vector<double> out;
  out.reserve(lambda.size());
  for (const auto& l : lambda) out.push_back(to_double(l));
  return out;
}

Circuit Circuit::make(std::vector<Point> vertices, Point inner) {
  auto lambda = barycentric_coordinates(vertices, inner);
  return Circuit{std::move(vertices), std::move(inner), std::move(lambda)};
}

bool LambdaPolytope::contains(std::span<const Rational> lambda) const {
  if (lambda.size() != positive.size()) return false;
  Rational total = 0;
  std::vector<Rational> point(inner.dim());
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (sgn(lambda[j]) < 0) return false;
    total += lambda[j];
    for (std::size_t i = 0; i < inner.dim(); ++i) point[i] += lambda[j] * positive[j][i];
  }
  return total == 1 && Point(std::move(point)) == inner;
}

bool LambdaPolytope::contains(std::span<const double> lambda, double tol) const {
  if (lambda.size() != positive.size()) return false;
  double total = 0.0;
  std::vector<double> point(inner.dim(), 0.0);
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (lambda[j] < -tol) return false;
    total += lambda[j];
    for (std::size_t i = 0; i < inner.dim(); ++i) point[i] += lambda[j] * to_double(positive[j][i]);
  }
  if (std::abs(total - 1.0) > tol) return false;
  for (std::size_t i = 0; i < inner.dim(); ++i) {
    if (std::abs(point[i] - to_double(inner[i])) > tol) return false;
  }
  return true;
}

RationalMatrix LambdaPolytope::constraint_matrix() const { return affine_matrix(positive, inner.dim()); }

std::vector<Rational> LambdaPolytope::constraint_rhs() const { return affine_rhs(inner); }

std::vector<Rational> barycentric_coordinates(std::span<const Point> vertices, const Point& inner) {
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "no vertices given");
  const auto solved = detail::solve_columns(affine_matrix(vertices, inner.dim()), {affine_rhs(inner)});
  if (!solved.full_column_rank) throw Error(ErrorCode::NotASimplex, "vertices are affinely dependent");
  const auto& lambda = solved.solutions.front();
  if (!lambda || !all_positive(*lambda)) {
    throw Error(ErrorCode::NotInRelativeInterior,
                inner.to_string() + " is not in the relative interior of the simplex");
  }
  return *lambda;
}

int affine_dimension(std::span<const Point> points) {
  if (points.empty()) return -1;
  return static_cast<int>(detail::rank(affine_matrix(points, points.front().dim()))) - 1;
}

bool affinely_independent(std::span<const Point> points) {
  return affine_dimension(points) == static_cast<int>(points.size()) - 1;
}

std::string to_string(NotACircuitReason reason) {
  switch (reason) {
    case NotACircuitReason::None: return "None";
    case NotACircuitReason::AffinelyIndependent: return "AffinelyIndependent";
    case NotACircuitReason::NotMinimallyDependent: return "NotMinimallyDependent";
    case NotACircuitReason::HullNotSimplex: return "HullNotSimplex";
  }
  return "Unknown";
}

PointSetClass classify_point_set(const SupportSet& points) {
  PointSetClass out;
  const auto pts = points.points();
  if (pts.empty()) throw Error(ErrorCode::InvalidArgument, "empty point set");
  if (pts.size() == 1) {
    out.kind = PointSetKind::Singleton;
    return out;
  }
  const int dim = affine_dimension(pts);
  const int m = static_cast<int>(pts.size());
  if (dim == m - 1) {
    out.reason = NotACircuitReason::AffinelyIndependent;
    return out;
  }
  std::vector<Point> rest;
  rest.reserve(pts.size() - 1);
  auto drop = [&](std::size_t skip) {
    rest.clear();
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j != skip) rest.push_back(pts[j]);
    }
  };
  // Minimal dependence: a single affine relation, and removing any point
  // leaves an independent set.
  bool minimal = dim == m - 2;
  for (std::size_t i = 0; minimal && i < pts.size(); ++i) {
    drop(i);
    minimal = affinely_independent(rest);
  }
  if (!minimal) {
    out.reason = NotACircuitReason::NotMinimallyDependent;
    return out;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    drop(i);
    const auto solved = detail::solve_columns(affine_matrix(rest, points.dim()), {affine_rhs(pts[i])});
    const auto& lambda = solved.solutions.front();
    if (lambda && all_positive(*lambda)) {
      out.kind = PointSetKind::SimplicialCircuit;
      out.inner_index = i;
      out.circuit = Circuit{rest, pts[i], *lambda};
      return out;
    }
  }
  out.reason = NotACircuitReason::HullNotSimplex;
  return out;
}

namespace {

void check_cap(const SupportSet& support, std::size_t cap) {
  if (support.size() > cap) {
    throw Error(ErrorCode::EnumerationCapExceeded, "support has " + std::to_string(support.size()) +
                                                       " points, enumeration cap is " + std::to_string(cap));
  }
}

// Depth-first search over affinely independent subsets of `candidates`.
// For each subset the callback receives the barycentric solutions of every
// support point with respect to it and returns false to prune supersets.
template <typename Visit>
void independent_subsets(const SupportSet& support, std::span<const std::size_t> candidates, Visit&& visit) {
  const std::size_t n = support.dim();
  std::vector<std::size_t> chosen;
  std::vector<Point> vertices;
  std::vector<std::vector<Rational>> all_rhs;
  all_rhs.reserve(support.size());
  for (const auto& p : support.points()) all_rhs.push_back(affine_rhs(p));

  std::function<void(std::size_t)> recurse = [&](std::size_t start) {
    for (std::size_t c = start; c < candidates.size(); ++c) {
      chosen.push_back(candidates[c]);
      vertices.push_back(support[candidates[c]]);
      const auto solved = detail::solve_columns(affine_matrix(vertices, n), all_rhs);
      if (solved.full_column_rank) {
        const bool descend = visit(chosen, vertices, solved.solutions);
        if (descend && vertices.size() < n + 1) recurse(c + 1);
      }
      chosen.pop_back();
      vertices.pop_back();
    }
  };
  recurse(0);
}

bool is_member(std::span<const std::size_t> indices, std::size_t i) {
  return std::find(indices.begin(), indices.end(), i) != indices.end();
}

}  // namespace

std::vector<SupportCircuit> enumerate_minimal_circuits(const SupportSet& support, std::size_t cap) {
  check_cap(support, cap);
  std::vector<std::size_t> all(support.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<SupportCircuit> out;
  independent_subsets(support, all, [&](const std::vector<std::size_t>& chosen, const std::vector<Point>& vertices,
                                        const std::vector<std::optional<std::vector<Rational>>>& coords) {
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (is_member(chosen, i)) continue;
      if (coords[i] && all_nonnegative(*coords[i])) inside.push_back(i);
    }
    // Any superset still contains these points as non-vertices.
    if (inside.size() >= 2) return false;
    if (inside.size() == 1 && vertices.size() >= 2 && all_positive(*coords[inside.front()])) {
      out.push_back(SupportCircuit{chosen, inside.front(),
                                   Circuit{vertices, support[inside.front()], *coords[inside.front()]}});
    }
    return true;
  });
  return out;
}

std::vector<SupportCircuit> circuits_with_inner(const SupportSet& support, std::span<const std::size_t> candidates,
                                                std::size_t inner, std::size_t cap) {
  check_cap(support, cap);
  if (inner >= support.size()) throw Error(ErrorCode::InvalidArgument, "inner index out of range");
  std::vector<std::size_t> pool;
  for (std::size_t c : candidates) {
    if (c != inner) pool.push_back(c);
  }
  std::vector<SupportCircuit> out;
  independent_subsets(support, pool, [&](const std::vector<std::size_t>& chosen, const std::vector<Point>& vertices,
                                         const std::vector<std::optional<std::vector<Rational>>>& coords) {
    const auto& lambda = coords[inner];
    if (vertices.size() >= 2 && lambda && all_positive(*lambda)) {
      out.push_back(SupportCircuit{chosen, inner, Circuit{vertices, support[inner], *lambda}});
    }
    return true;
  });
  return out;
}

std::optional<std::vector<Rational>> convex_combination(std::span<const Point> points, const Point& p) {
  if (points.empty()) return std::nullopt;
  const LambdaPolytope polytope{std::vector<Point>(points.begin(), points.end()), p};
  return lp::feasible_point(polytope);
}

std::vector<std::size_t> hull_vertices(const SupportSet& support) {
  std::vector<std::size_t> out;
  std::vector<Point> others;
  for (std::size_t i = 0; i < support.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (j != i) others.push_back(support[j]);
    }
    if (!convex_combination(others, support[i])) out.push_back(i);
  }
  return out;
}

}  // namespace dsonc
