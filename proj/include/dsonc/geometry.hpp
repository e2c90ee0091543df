#pragma once

// Exact point-set geometry over rational exponent vectors: support sets,
// sign decompositions, circuit detection and minimal-circuit enumeration.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsonc/rational.hpp"

namespace dsonc {

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<Rational> coords) : coords_(coords) {}

  static Point zero(std::size_t dim) { return Point(std::vector<Rational>(dim)); }

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Rational> coords() const { return coords_; }

  std::vector<double> to_double() const;
  bool is_integral() const;
  // All coordinates are even integers.
  bool is_even() const;
  bool is_zero() const;

  Point operator+(const Point& other) const;
  Point operator-(const Point& other) const;
  Point scaled(const Rational& factor) const;

  std::string to_string() const;

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }
  friend std::strong_ordering operator<=>(const Point& a, const Point& b);

 private:
  std::vector<Rational> coords_;
};

// Exact inner product <x, alpha> evaluated in double precision.
double dot(std::span<const double> x, const Point& alpha);

// Finite ordered set of distinct points of a common dimension.
class SupportSet {
 public:
  SupportSet() = default;
  SupportSet(std::size_t dim, std::vector<Point> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const { return points_; }
  std::optional<std::size_t> index_of(const Point& p) const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Point> points_;
};

// A = A+ ∪ A- with every hull vertex of A in A+.
class SignedSupport {
 public:
  // Throws VertexSignViolation when a hull vertex is flagged negative.
  SignedSupport(SupportSet base, const std::vector<bool>& negative);

  const SupportSet& base() const { return base_; }
  const std::vector<std::size_t>& positive() const { return positive_; }
  const std::vector<std::size_t>& negative() const { return negative_; }

 private:
  SupportSet base_;
  std::vector<std::size_t> positive_;
  std::vector<std::size_t> negative_;
};

// Affinely independent vertices plus one point in the relative interior of
// their convex hull, with the unique barycentric coordinates of that point.
struct Circuit {
  std::vector<Point> vertices;
  Point inner;
  std::vector<Rational> lambda;

  // Computes lambda; throws NotASimplex / NotInRelativeInterior.
  static Circuit make(std::vector<Point> vertices, Point inner);

  std::size_t ambient_dim() const { return inner.dim(); }
  // Dimension k of the simplex spanned by the vertices.
  std::size_t simplex_dim() const { return vertices.size() - 1; }
  bool full_dimensional() const { return simplex_dim() == ambient_dim(); }
  std::vector<double> lambda_double() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

// A circuit found inside a support set, with its indices into that set.
struct SupportCircuit {
  std::vector<std::size_t> vertex_indices;
  std::size_t inner_index = 0;
  Circuit circuit;
};

// {λ ≥ 0 : Σ λ_α α = β, Σ λ_α = 1}.
struct LambdaPolytope {
  std::vector<Point> positive;
  Point inner;

  bool contains(std::span<const Rational> lambda) const;
  bool contains(std::span<const double> lambda, double tol) const;
  // Equality system [α ...; 1 ...] λ = [β; 1].
  RationalMatrix constraint_matrix() const;
  std::vector<Rational> constraint_rhs() const;
};

// Unique λ > 0 with Σλ = 1 and Σ λ_i v_i = inner.
std::vector<Rational> barycentric_coordinates(std::span<const Point> vertices, const Point& inner);

// Dimension of the affine hull; -1 for the empty set.
int affine_dimension(std::span<const Point> points);
bool affinely_independent(std::span<const Point> points);

enum class PointSetKind { Singleton, SimplicialCircuit, NotACircuit };
enum class NotACircuitReason { None, AffinelyIndependent, NotMinimallyDependent, HullNotSimplex };

struct PointSetClass {
  PointSetKind kind = PointSetKind::NotACircuit;
  NotACircuitReason reason = NotACircuitReason::None;
  std::optional<Circuit> circuit;
  // Index of the inner point in the classified set (SimplicialCircuit only).
  std::size_t inner_index = 0;
};

PointSetClass classify_point_set(const SupportSet& points);

std::string to_string(NotACircuitReason reason);

inline constexpr std::size_t kDefaultEnumerationCap = 25;

// All minimal simplicial circuits C+ ∪ {β} with C+ ⊆ A, β ∈ A, ordered by
// vertex index tuples. Singletons are not listed.
std::vector<SupportCircuit> enumerate_minimal_circuits(const SupportSet& support,
                                                       std::size_t cap = kDefaultEnumerationCap);

// Every circuit C+ ∪ {β} with C+ drawn from `candidates` and β = support[inner]
// in the relative interior of conv(C+). These are exactly the vertices of
// Λ(candidates, β).
std::vector<SupportCircuit> circuits_with_inner(const SupportSet& support,
                                                std::span<const std::size_t> candidates,
                                                std::size_t inner,
                                                std::size_t cap = kDefaultEnumerationCap);

// Indices of the vertices of conv(A), ascending.
std::vector<std::size_t> hull_vertices(const SupportSet& support);

// Exact convex-combination weights expressing p over `points`, if any.
std::optional<std::vector<Rational>> convex_combination(std::span<const Point> points, const Point& p);

}  // namespace dsonc
