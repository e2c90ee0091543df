#include "dsonc/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "dsonc/error.hpp"
#include "dsonc/lpcore.hpp"

namespace dsonc {

namespace {

constexpr double kLogFloor = 1e-300;
constexpr double kSplitSumTolerance = 1e-12;

std::vector<double> to_doubles(std::span<const Rational> v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

Verdict closed_form_verdict(double inner_coeff, double threshold) {
  if (inner_coeff >= 0.0) return Verdict::Member;
  const double tol = kClosedFormTolerance * std::max(1.0, threshold);
  const double magnitude = -inner_coeff;
  if (std::abs(magnitude - threshold) <= tol) return Verdict::Boundary;
  return magnitude < threshold ? Verdict::Member : Verdict::NotMember;
}

// Σ λ ln(c/λ) with the convention 0·ln(c/0) = 0.
double entropy_objective(std::span<const double> lambda, std::span<const double> c) {
  double sum = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] > 0.0) sum += lambda[i] * (std::log(c[i]) - std::log(lambda[i]));
  }
  return sum;
}

// maximize gᵀs over Λ(points, inner), as an inequality-form LP.
lp::Outcome optimize_over_lambda(std::span<const Point> points, const Point& inner, std::span<const double> g) {
  const std::size_t m = points.size();
  const std::size_t n = inner.dim();
  lp::LinearProgram prog;
  prog.variables = m;
  prog.objective.assign(g.begin(), g.end());
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> row(m, 0.0);
    row[j] = -1.0;
    prog.add(std::move(row), 0.0);
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = to_double(points[j][k]);
    const double b = to_double(inner[k]);
    std::vector<double> neg(m);
    std::transform(row.begin(), row.end(), neg.begin(), [](double v) { return -v; });
    prog.add(std::move(row), b);
    prog.add(std::move(neg), -b);
  }
  prog.add(std::vector<double>(m, 1.0), 1.0);
  prog.add(std::vector<double>(m, -1.0), -1.0);
  return lp::solve(prog);
}

std::vector<Point> exponents_of(const std::vector<Term>& terms) {
  std::vector<Point> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.exponent);
  return out;
}

struct Decomposition {
  std::vector<Point> positives;
  std::vector<double> positive_coeffs;
  std::vector<Point> inners;
  std::vector<double> inner_coeffs;
};

Decomposition decompose(const Signomial& f) {
  const auto signed_support = sign_decomposition(f);
  Decomposition d;
  for (std::size_t i : signed_support.positive()) {
    d.positives.push_back(f.support()[i]);
    d.positive_coeffs.push_back(f.coefficient(i));
  }
  for (std::size_t i : signed_support.negative()) {
    d.inners.push_back(f.support()[i]);
    d.inner_coeffs.push_back(f.coefficient(i));
  }
  return d;
}

std::vector<AgeFunction> build_pieces(const Decomposition& d, const std::vector<std::vector<double>>& split) {
  std::vector<AgeFunction> pieces;
  for (std::size_t p = 0; p < d.inners.size(); ++p) {
    std::vector<Term> terms;
    for (std::size_t a = 0; a < d.positives.size(); ++a) {
      if (split[p][a] > 0.0) terms.push_back(Term{split[p][a] * d.positive_coeffs[a], d.positives[a]});
    }
    pieces.emplace_back(std::move(terms), d.inners[p], d.inner_coeffs[p]);
  }
  return pieces;
}

SplitPolicy policy_from_matrix(std::span<const Point> inners, std::span<const Point> positives,
                               const std::vector<std::vector<double>>& m) {
  std::vector<SplitPiece> pieces;
  for (std::size_t p = 0; p < inners.size(); ++p) {
    SplitPiece piece{inners[p], {}};
    for (std::size_t a = 0; a < positives.size(); ++a) {
      if (m[p][a] > 0.0) piece.shares.push_back(SplitShare{positives[a], m[p][a]});
    }
    pieces.push_back(std::move(piece));
  }
  return SplitPolicy::from_pieces(std::move(pieces));
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "Member";
    case Verdict::Boundary: return "Boundary";
    case Verdict::NotMember: return "NotMember";
  }
  return "NotMember";
}

std::string_view to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Certified: return "Certified";
    case BoundStatus::NoCertificate: return "NoCertificate";
    case BoundStatus::UnboundedDirection: return "UnboundedDirection";
  }
  return "NoCertificate";
}

double circuit_number(const CircuitFunction& f) {
  const auto lambda = f.circuit().lambda_double();
  double s = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    s += lambda[i] * (std::log(f.positive_coeffs()[i]) - std::log(lambda[i]));
  }
  return std::exp(s);
}

double dual_circuit_number(const CircuitFunction& f) {
  const auto lambda = f.circuit().lambda_double();
  double s = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) s += lambda[i] * std::log(f.positive_coeffs()[i]);
  return std::exp(s);
}

Verdict is_sonc_circuit(const CircuitFunction& f) { return closed_form_verdict(f.inner_coeff(), circuit_number(f)); }

Verdict is_dsonc_circuit(const CircuitFunction& f) {
  return closed_form_verdict(f.inner_coeff(), dual_circuit_number(f));
}

CertificateReport certify_circuit(const CircuitFunction& f) {
  CertificateReport r;
  r.theta = circuit_number(f);
  r.theta_check = dual_circuit_number(f);
  r.in_sonc = closed_form_verdict(f.inner_coeff(), *r.theta);
  r.in_dsonc = closed_form_verdict(f.inner_coeff(), *r.theta_check);
  r.boundary_dsonc = r.in_dsonc == Verdict::Boundary;
  if (accepted(r.in_dsonc) && f.inner_coeff() < 0.0) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < f.circuit().vertices.size(); ++i) {
      terms.push_back(Term{f.positive_coeffs()[i], f.circuit().vertices[i]});
    }
    const auto age = is_dsonc_age(AgeFunction(std::move(terms), f.circuit().inner, f.inner_coeff()));
    if (age.witness) r.witnesses.push_back(*age.witness);
  }
  return r;
}

CircuitFunction primal_to_dual(const CircuitFunction& f) {
  const auto lambda = f.circuit().lambda_double();
  std::vector<double> coeffs(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) coeffs[i] = f.positive_coeffs()[i] / lambda[i];
  return CircuitFunction(f.circuit(), std::move(coeffs), f.inner_coeff());
}

DualSoncResult check_dual_sonc_membership(const SignedSupport& support, std::span<const double> v,
                                          std::size_t cap) {
  const auto& base = support.base();
  if (v.size() != base.size()) throw Error(ErrorCode::DimensionMismatch, "vector length differs from support size");
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite vector entry");
  }
  DualSoncResult out;
  for (std::size_t i : support.positive()) {
    if (v[i] < 0.0) out.negative_on_positive.push_back(i);
  }
  for (std::size_t beta : support.negative()) {
    const auto circuits = circuits_with_inner(base, support.positive(), beta, cap);
    for (const auto& sc : circuits) {
      ++out.circuits_checked;
      if (v[beta] == 0.0) continue;
      const double lhs = std::log(std::abs(v[beta]));
      double rhs = 0.0;
      const auto lambda = sc.circuit.lambda_double();
      for (std::size_t k = 0; k < lambda.size(); ++k) {
        const double va = v[sc.vertex_indices[k]];
        rhs += va > 0.0 ? lambda[k] * std::log(va) : -std::numeric_limits<double>::infinity();
      }
      const double excess = lhs - rhs;
      if (excess > kClosedFormTolerance) out.violations.push_back(CircuitViolation{sc, lhs, rhs});
    }
  }
  const bool ok = out.negative_on_positive.empty() && out.violations.empty();
  out.verdict = ok ? Verdict::Member : Verdict::NotMember;
  return out;
}

AgeDsoncResult is_dsonc_age(const AgeFunction& g) {
  AgeDsoncResult out;
  const std::size_t n = g.dim();
  const double cb = g.inner_coeff();
  if (cb >= 0.0) {
    out.verdict = Verdict::Member;
    out.witness = DsoncWitness{g.inner(), std::vector<double>(n, 0.0), std::nullopt};
    out.diagnostic = "nonnegative inner coefficient";
    return out;
  }
  std::vector<Term> active;
  for (const auto& t : g.positive()) {
    if (t.coefficient > 0.0) active.push_back(t);
  }
  if (active.empty()) {
    out.verdict = Verdict::NotMember;
    out.slack = -std::numeric_limits<double>::infinity();
    out.diagnostic = "no positive terms to dominate the negative inner term";
    return out;
  }
  const auto points = exponents_of(active);
  if (!convex_combination(points, g.inner())) {
    out.verdict = Verdict::NotMember;
    out.slack = -std::numeric_limits<double>::infinity();
    out.diagnostic = "inner point lies outside the convex hull of the positive support";
    return out;
  }
  // Variables (τ, s): maximize s with s − (α−β)ᵀτ <= ln(c_α/|c_β|), s <= 1.
  lp::LinearProgram prog;
  prog.variables = n + 1;
  prog.objective.assign(n + 1, 0.0);
  prog.objective[n] = 1.0;
  const double log_cb = std::log(-cb);
  for (const auto& t : active) {
    std::vector<double> row(n + 1);
    const Point diff = t.exponent - g.inner();
    for (std::size_t k = 0; k < n; ++k) row[k] = -to_double(diff[k]);
    row[n] = 1.0;
    prog.add(std::move(row), std::log(t.coefficient) - log_cb);
  }
  std::vector<double> cap_row(n + 1, 0.0);
  cap_row[n] = 1.0;
  prog.add(std::move(cap_row), 1.0);
  const auto res = lp::solve(prog);
  if (res.status != lp::Status::Optimal) {
    throw Error(ErrorCode::NumericalBreakdown, "AGE certificate LP did not reach an optimum");
  }
  out.slack = res.solution[n];
  std::vector<double> tau(res.solution.begin(), res.solution.begin() + static_cast<std::ptrdiff_t>(n));
  if (out.slack >= -kLpTolerance) {
    out.verdict = Verdict::Member;
    out.witness = DsoncWitness{g.inner(), std::move(tau), std::nullopt};
  } else {
    out.verdict = Verdict::NotMember;
    out.diagnostic = "no τ satisfies all log inequalities; best uniform slack " + std::to_string(out.slack);
  }
  return out;
}

AgeSoncResult is_sonc_age(const AgeFunction& g, const FrankWolfeOptions& options) {
  AgeSoncResult out;
  const double cb = g.inner_coeff();
  out.lambda.assign(g.positive().size(), 0.0);
  if (cb >= 0.0) {
    out.verdict = Verdict::Member;
    out.converged = true;
    out.log_target = -std::numeric_limits<double>::infinity();
    out.diagnostic = "nonnegative inner coefficient";
    return out;
  }
  out.log_target = std::log(-cb);

  std::vector<std::size_t> active_idx;
  std::vector<Point> points;
  std::vector<double> c;
  for (std::size_t i = 0; i < g.positive().size(); ++i) {
    if (g.positive()[i].coefficient > 0.0) {
      active_idx.push_back(i);
      points.push_back(g.positive()[i].exponent);
      c.push_back(g.positive()[i].coefficient);
    }
  }
  if (points.empty() || !lp::feasible_point(LambdaPolytope{points, g.inner()})) {
    out.verdict = Verdict::NotMember;
    out.log_value = out.upper_bound = -std::numeric_limits<double>::infinity();
    out.diagnostic = "inner point lies outside the convex hull of the positive support";
    return out;
  }

  // Restrict to coordinates that can be positive somewhere in Λ and start
  // from a relative-interior point, so every iterate keeps a finite gradient.
  const std::size_t m = points.size();
  std::vector<double> start(m, 0.0);
  std::vector<std::size_t> free_coords;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> unit(m, 0.0);
    unit[j] = 1.0;
    const auto res = optimize_over_lambda(points, g.inner(), unit);
    if (res.status == lp::Status::Optimal && res.value > 1e-9) {
      free_coords.push_back(j);
      for (std::size_t k = 0; k < m; ++k) start[k] += res.solution[k];
    }
  }
  if (free_coords.empty()) {
    out.verdict = Verdict::NotMember;
    out.diagnostic = "Λ-polytope has no positive coordinate";
    return out;
  }
  std::vector<Point> fpoints;
  std::vector<double> fc;
  std::vector<double> lambda;
  double total = 0.0;
  for (std::size_t j : free_coords) total += std::max(0.0, start[j]);
  for (std::size_t j : free_coords) {
    fpoints.push_back(points[j]);
    fc.push_back(c[j]);
    lambda.push_back(std::max(0.0, start[j]) / total);
  }
  const std::size_t k = fpoints.size();

  auto record = [&](const std::vector<double>& lam) {
    std::fill(out.lambda.begin(), out.lambda.end(), 0.0);
    for (std::size_t j = 0; j < k; ++j) out.lambda[active_idx[free_coords[j]]] = lam[j];
  };

  const double target = out.log_target;
  double lower = entropy_objective(lambda, fc);
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    out.iterations = iter + 1;
    std::vector<double> grad(k);
    for (std::size_t j = 0; j < k; ++j) grad[j] = std::log(fc[j]) - std::log(std::max(lambda[j], kLogFloor)) - 1.0;
    const auto vertex = optimize_over_lambda(fpoints, g.inner(), grad);
    if (vertex.status != lp::Status::Optimal) {
      throw Error(ErrorCode::NumericalBreakdown, "Frank-Wolfe vertex oracle failed");
    }
    const auto& s = vertex.solution;
    double gap = 0.0;
    for (std::size_t j = 0; j < k; ++j) gap += grad[j] * (s[j] - lambda[j]);
    gap = std::max(gap, 0.0);
    lower = entropy_objective(lambda, fc);
    upper = std::min(upper, lower + gap);

    if (upper < target - kLpTolerance) {
      out.verdict = Verdict::NotMember;
      out.converged = gap <= options.gap_tolerance;
      break;
    }
    if (lower > target + kLpTolerance) {
      out.verdict = Verdict::Member;
      out.converged = gap <= options.gap_tolerance;
      break;
    }
    if (gap <= options.gap_tolerance) {
      out.converged = true;
      out.verdict = lower >= target - kLpTolerance ? Verdict::Boundary : Verdict::NotMember;
      break;
    }

    // Exact line search on φ(γ) = F(λ + γ(s − λ)) by bisection on φ'.
    std::vector<double> d(k);
    for (std::size_t j = 0; j < k; ++j) d[j] = s[j] - lambda[j];
    auto slope = [&](double gamma) {
      double sum = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        if (d[j] == 0.0) continue;
        const double mu = lambda[j] + gamma * d[j];
        if (mu <= 0.0) return d[j] < 0.0 ? -std::numeric_limits<double>::infinity()
                                          : std::numeric_limits<double>::infinity();
        sum += d[j] * (std::log(fc[j]) - std::log(mu));
      }
      return sum;
    };
    double step = 1.0;
    if (slope(1.0) < 0.0) {
      double lo = 0.0;
      double hi = 1.0;
      for (int b = 0; b < 100 && hi - lo > 1e-15; ++b) {
        const double mid = 0.5 * (lo + hi);
        if (slope(mid) > 0.0) lo = mid;
        else hi = mid;
      }
      step = lo;
    }
    if (step <= 0.0) {
      out.converged = true;
      out.verdict = lower >= target - kLpTolerance ? Verdict::Boundary : Verdict::NotMember;
      break;
    }
    for (std::size_t j = 0; j < k; ++j) lambda[j] += step * d[j];
    if (iter + 1 == options.max_iterations) {
      lower = entropy_objective(lambda, fc);
      out.verdict = lower >= target - kLpTolerance ? Verdict::Member : Verdict::NotMember;
      out.diagnostic = "iteration cap reached before the gap closed; verdict from the best lower bound";
    }
  }
  record(lambda);
  out.log_value = entropy_objective(lambda, fc);
  out.upper_bound = std::max(upper, out.log_value);
  return out;
}

SplitPolicy SplitPolicy::from_pieces(std::vector<SplitPiece> pieces) {
  SplitPolicy p;
  p.uniform_ = false;
  for (const auto& piece : pieces) {
    for (const auto& s : piece.shares) {
      if (!std::isfinite(s.fraction) || s.fraction < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "split fractions must be finite and nonnegative");
      }
    }
  }
  p.pieces_ = std::move(pieces);
  return p;
}

std::vector<std::vector<double>> SplitPolicy::resolve(std::span<const Point> inners,
                                                      std::span<const Point> positives) const {
  std::vector<std::vector<double>> m(inners.size(), std::vector<double>(positives.size(), 0.0));
  if (inners.empty()) return m;
  if (uniform_) {
    const double share = 1.0 / static_cast<double>(inners.size());
    for (auto& row : m) std::fill(row.begin(), row.end(), share);
    return m;
  }
  for (const auto& piece : pieces_) {
    const auto pit = std::find(inners.begin(), inners.end(), piece.inner);
    if (pit == inners.end()) {
      throw Error(ErrorCode::InvalidArgument, "split names inner point " + piece.inner.to_string() +
                                                  " which is not a negative term");
    }
    const auto p = static_cast<std::size_t>(pit - inners.begin());
    for (const auto& share : piece.shares) {
      const auto ait = std::find(positives.begin(), positives.end(), share.positive);
      if (ait == positives.end()) {
        throw Error(ErrorCode::InvalidArgument, "split names exponent " + share.positive.to_string() +
                                                    " which is not a positive term");
      }
      m[p][static_cast<std::size_t>(ait - positives.begin())] += share.fraction;
    }
  }
  for (std::size_t a = 0; a < positives.size(); ++a) {
    double sum = 0.0;
    for (std::size_t p = 0; p < inners.size(); ++p) sum += m[p][a];
    if (sum > 1.0 + kSplitSumTolerance) {
      throw Error(ErrorCode::InvalidArgument,
                  "split fractions for exponent " + positives[a].to_string() + " sum to more than 1");
    }
  }
  return m;
}

GeneralResult is_dsonc_general(const Signomial& f, const SplitPolicy& split) {
  const auto d = decompose(f);
  GeneralResult out;
  out.split = split.resolve(d.inners, d.positives);
  out.pieces = build_pieces(d, out.split);
  out.verdict = Verdict::Member;
  for (const auto& piece : out.pieces) {
    out.piece_results.push_back(is_dsonc_age(piece));
    if (out.piece_results.back().verdict == Verdict::NotMember) out.verdict = Verdict::NotMember;
  }
  return out;
}

GeneralResult is_sonc_general(const Signomial& f, const SplitPolicy& split) {
  const auto d = decompose(f);
  GeneralResult out;
  out.split = split.resolve(d.inners, d.positives);
  out.pieces = build_pieces(d, out.split);
  out.verdict = Verdict::Member;
  for (const auto& piece : out.pieces) {
    out.sonc_piece_results.push_back(is_sonc_age(piece));
    if (out.sonc_piece_results.back().verdict == Verdict::NotMember) out.verdict = Verdict::NotMember;
  }
  return out;
}

BoundOutcome dsonc_lower_bound(const Signomial& f, const SplitPolicy& split) {
  const std::size_t n = f.dim();
  const Point origin = Point::zero(n);
  const double c0 = f.coefficient_of(origin);
  std::vector<Term> rest;
  for (auto& t : f.terms()) {
    if (!t.exponent.is_zero()) rest.push_back(std::move(t));
  }
  const auto g = Signomial::from_terms(n, std::move(rest));
  auto d = decompose(g);
  d.inners.push_back(origin);
  d.inner_coeffs.push_back(0.0);

  BoundOutcome out;
  const auto matrix = split.resolve(d.inners, d.positives);
  const auto pieces = build_pieces(d, matrix);
  const std::size_t constant = pieces.size() - 1;

  BoundResult b;
  b.piece_inners = d.inners;
  b.positives = d.positives;
  b.split = matrix;
  b.constant_coeff = c0;
  bool certified = true;
  for (std::size_t p = 0; p < constant; ++p) {
    out.piece_results.push_back(is_dsonc_age(pieces[p]));
    const auto& r = out.piece_results.back();
    if (r.verdict == Verdict::NotMember) certified = false;
    else if (r.witness) b.witnesses.push_back(*r.witness);
  }
  if (!certified) {
    out.status = BoundStatus::NoCertificate;
    out.diagnostic = "at least one negative-term piece has no DSONC certificate under this split";
    return out;
  }

  b.constant_piece = pieces[constant].positive();
  if (b.constant_piece.empty()) {
    b.ell = -std::numeric_limits<double>::infinity();
    b.gamma_dsonc = b.gamma_sonc_boosted = c0;
    out.status = BoundStatus::Certified;
    out.diagnostic = "constant piece is empty; bound is the existing constant term";
    out.bound = std::move(b);
    return out;
  }

  // Variables (τ, ℓ): maximize ℓ with ℓ − αᵀτ <= ln(share_α c_α).
  lp::LinearProgram prog;
  prog.variables = n + 1;
  prog.objective.assign(n + 1, 0.0);
  prog.objective[n] = 1.0;
  for (const auto& t : b.constant_piece) {
    std::vector<double> row(n + 1);
    for (std::size_t k = 0; k < n; ++k) row[k] = -to_double(t.exponent[k]);
    row[n] = 1.0;
    prog.add(std::move(row), std::log(t.coefficient));
  }
  const auto res = lp::solve(prog);
  if (res.status == lp::Status::Unbounded) {
    out.status = BoundStatus::UnboundedDirection;
    out.diagnostic = "origin is not in the convex hull of the constant piece's support";
    return out;
  }
  if (res.status != lp::Status::Optimal) {
    throw Error(ErrorCode::NumericalBreakdown, "bound LP did not reach an optimum");
  }
  b.ell = res.solution[n];
  b.gamma_dsonc = c0 + std::exp(b.ell);
  b.gamma_sonc_boosted = b.gamma_dsonc;
  b.dual_lambda = res.duals;
  std::vector<double> tau(res.solution.begin(), res.solution.begin() + static_cast<std::ptrdiff_t>(n));
  b.witnesses.push_back(DsoncWitness{origin, std::move(tau), b.ell});
  out.status = BoundStatus::Certified;
  out.bound = std::move(b);
  return out;
}

double sonc_bound_boost(BoundResult& b, std::span<const double> lambda) {
  if (lambda.size() != b.constant_piece.size()) {
    throw Error(ErrorCode::InfeasibleLambda, "λ length differs from the constant piece size");
  }
  if (b.constant_piece.empty()) throw Error(ErrorCode::InfeasibleLambda, "constant piece is empty");
  const LambdaPolytope poly{exponents_of(b.constant_piece), Point::zero(b.constant_piece.front().exponent.dim())};
  if (!poly.contains(lambda, 1e-9)) {
    throw Error(ErrorCode::InfeasibleLambda, "λ is not in the Λ-polytope of the constant piece");
  }
  double log_factor = 0.0;
  for (double l : lambda) {
    if (l > 0.0) log_factor -= l * std::log(l);
  }
  const double value = b.constant_coeff + std::exp(log_factor + b.ell);
  b.gamma_sonc_boosted = value;
  b.lambda_used.assign(lambda.begin(), lambda.end());
  return value;
}

std::vector<double> boost_lambda(const BoundResult& b) {
  const auto points = exponents_of(b.constant_piece);
  if (points.empty()) throw Error(ErrorCode::InfeasibleLambda, "constant piece is empty");
  const Point origin = Point::zero(points.front().dim());
  if (affinely_independent(points)) {
    try {
      return to_doubles(barycentric_coordinates(points, origin));
    } catch (const Error&) {
      // Not a circuit around the origin; fall back to a Λ vertex.
    }
  }
  const auto vertex = lp::feasible_point(LambdaPolytope{points, origin});
  if (!vertex) throw Error(ErrorCode::InfeasibleLambda, "origin is not in the convex hull of the constant piece");
  return to_doubles(*vertex);
}

SplitPolicy refine_split(const Signomial& f, const SplitPolicy& start, SplitTarget target, int passes) {
  std::vector<Point> inners;
  std::vector<Point> positives;
  if (target == SplitTarget::Bound) {
    std::vector<Term> rest;
    for (auto& t : f.terms()) {
      if (!t.exponent.is_zero()) rest.push_back(std::move(t));
    }
    const auto d = decompose(Signomial::from_terms(f.dim(), std::move(rest)));
    inners = d.inners;
    inners.push_back(Point::zero(f.dim()));
    positives = d.positives;
  } else {
    const auto d = decompose(f);
    inners = d.inners;
    positives = d.positives;
  }
  if (inners.size() < 2 || positives.empty()) return start;

  using Score = std::tuple<int, double>;
  auto score = [&](const std::vector<std::vector<double>>& m) -> Score {
    const auto policy = policy_from_matrix(inners, positives, m);
    if (target == SplitTarget::Bound) {
      const auto r = dsonc_lower_bound(f, policy);
      if (r.status == BoundStatus::Certified) return {2, r.bound->gamma_dsonc};
      if (r.status == BoundStatus::UnboundedDirection) return {0, 0.0};
      double s = 0.0;
      for (const auto& p : r.piece_results) s += std::min(p.slack, 0.0);
      return {1, s};
    }
    const auto r = is_dsonc_general(f, policy);
    double s = 0.0;
    for (const auto& p : r.piece_results) s += std::min(p.slack, 0.0);
    return {r.verdict == Verdict::NotMember ? 1 : 2, s};
  };

  auto m = start.resolve(inners, positives);
  Score best = score(m);
  double step = 0.5;
  for (int pass = 0; pass < passes && step > 1e-4; ++pass) {
    bool improved = false;
    for (std::size_t a = 0; a < positives.size(); ++a) {
      for (std::size_t from = 0; from < inners.size(); ++from) {
        for (std::size_t to = 0; to < inners.size(); ++to) {
          if (from == to || m[from][a] <= 0.0) continue;
          const double delta = step * m[from][a];
          auto trial = m;
          trial[from][a] -= delta;
          trial[to][a] += delta;
          const Score s = score(trial);
          if (s > best) {
            best = s;
            m = std::move(trial);
            improved = true;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return policy_from_matrix(inners, positives, m);
}

ExtremeRayResult is_extreme_ray(const Signomial& f, const SupportSet& ambient) {
  ExtremeRayResult out;
  for (const auto& p : f.support().points()) {
    if (!ambient.index_of(p)) throw Error(ErrorCode::SupportMismatch, "ambient support does not contain " + p.to_string());
  }
  if (f.size() == 1) {
    if (f.coefficient(0) > 0.0) {
      out.extreme = true;
      out.kind = ExtremeRayKind::Monomial;
      out.reason = "single positive exponential monomial";
    } else {
      out.reason = "single nonpositive monomial is not in the cone";
    }
    return out;
  }
  const auto cls = classify_point_set(f.support());
  if (cls.kind != PointSetKind::SimplicialCircuit) {
    out.reason = "support is not a simplicial circuit (" + to_string(cls.reason) + ")";
    return out;
  }
  const auto cf = CircuitFunction::from_signomial(f);
  const Circuit& circuit = cf.circuit();
  for (const auto& p : ambient.points()) {
    if (f.support().index_of(p)) continue;
    if (convex_combination(circuit.vertices, p)) {
      out.reason = "ambient point " + p.to_string() + " lies in the circuit's simplex, so the circuit is not minimal";
      return out;
    }
  }
  const double theta_check = dual_circuit_number(cf);
  const double magnitude = -cf.inner_coeff();
  if (std::abs(magnitude - theta_check) <= kClosedFormTolerance * std::max(1.0, theta_check)) {
    out.extreme = true;
    out.kind = ExtremeRayKind::MinimalCircuit;
    out.reason = "minimal circuit function with -c_beta equal to the dual circuit number";
  } else {
    out.reason = "inner coefficient does not meet the dual circuit number with equality";
  }
  return out;
}

}  // namespace dsonc
