#include "dsonc/mms.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dsonc/detail/exact_linalg.hpp"
#include "dsonc/error.hpp"

namespace dsonc {

namespace {

bool in_even_orthant(const Point& p) {
  if (!p.is_even()) return false;
  return std::all_of(p.coords().begin(), p.coords().end(), [](const Rational& x) { return sgn(x) >= 0; });
}

// Columns are the given points, lifted by a trailing 1.
RationalMatrix lifted_columns(const std::vector<Point>& points, std::size_t dim) {
  RationalMatrix m(dim + 1, std::vector<Rational>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) m[i][j] = points[j][i];
    m[dim][j] = 1;
  }
  return m;
}

}  // namespace

LatticeSimplex::LatticeSimplex(std::vector<Point> delta) : delta_(std::move(delta)) {
  if (delta_.empty()) throw Error(ErrorCode::InvalidArgument, "lattice simplex needs at least one point");
  dim_ = delta_.front().dim();
  if (dim_ == 0) throw Error(ErrorCode::InvalidArgument, "lattice simplex dimension must be positive");
  for (const auto& p : delta_) {
    if (p.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "lattice simplex points differ in dimension");
    if (!p.is_integral()) throw Error(ErrorCode::InvalidArgument, "lattice point " + p.to_string() + " is not integral");
  }
  std::sort(delta_.begin(), delta_.end());
  delta_.erase(std::unique(delta_.begin(), delta_.end()), delta_.end());
}

bool MediatedSetResult::contains(const Point& p) const {
  return std::binary_search(mediated.begin(), mediated.end(), p);
}

std::vector<Point> lattice_points_in_hull(const LatticeSimplex& delta, std::size_t cap) {
  const std::size_t n = delta.dim();
  const auto& pts = delta.delta();
  std::vector<Rational> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = hi[i] = pts.front()[i];
    for (const auto& p : pts) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  }
  double candidates = 1.0;
  for (std::size_t i = 0; i < n; ++i) candidates *= to_double(hi[i] - lo[i]) + 1.0;
  if (candidates > static_cast<double>(cap)) {
    throw Error(ErrorCode::BoxTooLarge, "bounding box has " + std::to_string(static_cast<long long>(candidates)) +
                                            " candidates, above the cap of " + std::to_string(cap));
  }

  std::vector<Point> box;
  std::vector<Rational> cur = lo;
  while (true) {
    box.emplace_back(cur);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (cur[i] < hi[i]) {
        cur[i] += 1;
        break;
      }
      cur[i] = lo[i];
    }
    if (i == n) break;
  }

  std::vector<Point> inside;
  if (affinely_independent(pts)) {
    const auto a = lifted_columns(pts, n);
    std::vector<std::vector<Rational>> rhs;
    rhs.reserve(box.size());
    for (const auto& p : box) {
      std::vector<Rational> b(p.coords().begin(), p.coords().end());
      b.emplace_back(1);
      rhs.push_back(std::move(b));
    }
    const auto solved = detail::solve_columns(a, rhs);
    for (std::size_t k = 0; k < box.size(); ++k) {
      const auto& lam = solved.solutions[k];
      if (lam && std::all_of(lam->begin(), lam->end(), [](const Rational& v) { return sgn(v) >= 0; })) {
        inside.push_back(box[k]);
      }
    }
  } else {
    for (const auto& p : box) {
      if (convex_combination(pts, p)) inside.push_back(p);
    }
  }
  std::sort(inside.begin(), inside.end());
  return inside;
}

bool is_even_midpoint(const Point& p, const std::vector<Point>& set) {
  const Point twice = p.scaled(2);
  std::set<Point> even;
  for (const auto& q : set) {
    if (q.is_even()) even.insert(q);
  }
  for (const auto& u : even) {
    if (u == p) continue;
    if (even.count(twice - u)) return true;
  }
  return false;
}

MediatedSetResult maximal_mediated_set(const LatticeSimplex& delta, std::size_t cap) {
  MediatedSetResult r;
  r.lattice_points = lattice_points_in_hull(delta, cap);
  const std::set<Point> required(delta.delta().begin(), delta.delta().end());
  std::vector<Point> current = r.lattice_points;
  while (true) {
    ++r.iterations;
    std::vector<Point> keep;
    for (const auto& p : current) {
      if (required.count(p) || is_even_midpoint(p, current)) keep.push_back(p);
    }
    if (keep.size() == current.size()) break;
    current = std::move(keep);
  }
  r.mediated = std::move(current);
  return r;
}

SosResult is_sos_dsonc_circuit_poly(const CircuitFunction& f) {
  const auto& circuit = f.circuit();
  for (const auto& v : circuit.vertices) {
    if (!in_even_orthant(v)) {
      throw Error(ErrorCode::PreconditionViolation, "vertex " + v.to_string() + " is not in (2N)^n");
    }
  }
  if (!circuit.inner.is_integral()) {
    throw Error(ErrorCode::PreconditionViolation, "inner point " + circuit.inner.to_string() + " is not integral");
  }
  const bool inner_even = circuit.inner.is_even();
  const double effective = inner_even ? f.inner_coeff() : -std::abs(f.inner_coeff());
  const CircuitFunction test(circuit, std::vector<double>(f.positive_coeffs().begin(), f.positive_coeffs().end()),
                            effective);
  SosResult r;
  r.dsonc = is_dsonc_circuit(test);
  r.mediated = maximal_mediated_set(LatticeSimplex(circuit.vertices));
  r.inner_in_mediated = r.mediated.contains(circuit.inner);
  if (f.inner_coeff() >= 0.0 && inner_even) {
    r.sos = true;
    r.reason = "sum of monomial squares";
  } else if (r.inner_in_mediated) {
    r.sos = true;
    r.reason = "inner point lies in the maximal mediated set";
  } else {
    r.reason = "inner point lies outside the maximal mediated set";
  }
  return r;
}

BinomialSquareResult binomial_square_dsonc_check(double a, double b, const Point& alpha, const Point& beta) {
  if (alpha.dim() != beta.dim()) throw Error(ErrorCode::DimensionMismatch, "binomial exponents differ in dimension");
  if (alpha == beta) throw Error(ErrorCode::InvalidArgument, "binomial exponents must differ");
  if (!alpha.is_integral() || !beta.is_integral()) {
    throw Error(ErrorCode::InvalidArgument, "binomial exponents must be integral");
  }
  if (!std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorCode::InvalidArgument, "non-finite binomial coefficient");
  BinomialSquareResult r;
  r.expansion = Signomial::from_terms(
      alpha.dim(), {Term{a * a, alpha.scaled(2)}, Term{b * b, beta.scaled(2)}, Term{2 * a * b, alpha + beta}});
  if (a * b >= 0.0) {
    r.dsonc = true;
    return r;
  }
  const AgeFunction age({Term{a * a, alpha.scaled(2)}, Term{b * b, beta.scaled(2)}}, alpha + beta, 2 * a * b);
  r.age_check = is_dsonc_age(age);
  r.dsonc = accepted(r.age_check->verdict);
  return r;
}

Signomial expand_sum_of_squares(std::size_t dim, const std::vector<std::vector<Term>>& polynomials) {
  std::vector<Term> terms;
  for (const auto& poly : polynomials) {
    for (const auto& s : poly) {
      for (const auto& t : poly) terms.push_back(Term{s.coefficient * t.coefficient, s.exponent + t.exponent});
    }
  }
  return Signomial::from_terms(dim, std::move(terms));
}

}  // namespace dsonc
