#include "dsonc/structure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "dsonc/error.hpp"

namespace dsonc {

namespace {

constexpr double kStructureTolerance = 1e-9;
constexpr double kEqualityTolerance = 1e-8;

void require_full_dimensional(const CircuitFunction& f) {
  if (!f.circuit().full_dimensional()) {
    throw Error(ErrorCode::DegenerateCircuit, "circuit is not full-dimensional; the log-linear system is underdetermined");
  }
}

// Solves <x, α_i − β> − y = rhs_i for (x, y).
Eigen::VectorXd solve_log_system(const Circuit& circuit, const Eigen::VectorXd& rhs) {
  const std::size_t n = circuit.ambient_dim();
  Eigen::MatrixXd m(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const Point diff = circuit.vertices[i] - circuit.inner;
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(diff[j]);
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n)) = -1.0;
  }
  Eigen::VectorXd sol = m.partialPivLu().solve(rhs);
  if (!sol.allFinite()) throw Error(ErrorCode::NumericalBreakdown, "log-linear system solve produced non-finite values");
  return sol;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

EquilibriumResult equilibrium_point(const CircuitFunction& f) {
  require_full_dimensional(f);
  const std::size_t n = f.ambient_dim();
  Eigen::VectorXd rhs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) rhs(static_cast<Eigen::Index>(i)) = -std::log(f.positive_coeffs()[i]);
  const auto sol = solve_log_system(f.circuit(), rhs);
  EquilibriumResult r;
  r.point.assign(sol.data(), sol.data() + n);
  r.common_log_value = sol(static_cast<Eigen::Index>(n));
  return r;
}

MinimizerResult minimizer(const CircuitFunction& f) {
  require_full_dimensional(f);
  const std::size_t n = f.ambient_dim();
  const auto lambda = f.circuit().lambda_double();
  Eigen::VectorXd rhs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    rhs(static_cast<Eigen::Index>(i)) = std::log(lambda[i]) - std::log(f.positive_coeffs()[i]);
  }
  const auto sol = solve_log_system(f.circuit(), rhs);
  MinimizerResult r;
  r.point.assign(sol.data(), sol.data() + n);
  r.scale = std::exp(sol(static_cast<Eigen::Index>(n)));
  r.value = normalized_value(f, r.point);
  return r;
}

double normalized_value(const CircuitFunction& f, std::span<const double> x) {
  if (x.size() != f.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "evaluation point dimension");
  double sum = f.inner_coeff();
  const auto& c = f.circuit();
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    sum += f.positive_coeffs()[i] * std::exp(dot(x, c.vertices[i] - c.inner));
  }
  return sum;
}

bool is_dsonc_boundary_via_equilibrium(const CircuitFunction& f) {
  if (!(f.inner_coeff() < 0.0)) throw Error(ErrorCode::PreconditionViolation, "inner coefficient must be negative");
  const double level = std::exp(equilibrium_point(f).common_log_value);
  return relative_gap(-f.inner_coeff(), level) <= kStructureTolerance;
}

bool tropical_genus_zero(const CircuitFunction& f) {
  if (!(f.inner_coeff() < 0.0)) throw Error(ErrorCode::PreconditionViolation, "inner coefficient must be negative");
  const double level = std::exp(equilibrium_point(f).common_log_value);
  return -f.inner_coeff() - level <= kStructureTolerance * std::max(1.0, level);
}

CircuitFunction generate_boundary_function(const Circuit& circuit, std::span<const double> w, double t) {
  if (w.size() != circuit.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "w dimension");
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "t must be positive and finite");
  std::vector<double> coeffs;
  coeffs.reserve(circuit.vertices.size());
  for (const auto& alpha : circuit.vertices) coeffs.push_back(t * std::exp(-dot(w, alpha - circuit.inner)));
  return CircuitFunction(circuit, std::move(coeffs), -t);
}

MinimizerEquilibriumReport minimizer_equals_equilibrium(const CircuitFunction& f) {
  const auto eq = equilibrium_point(f);
  const auto mn = minimizer(f);
  MinimizerEquilibriumReport r;
  for (std::size_t i = 0; i < eq.point.size(); ++i) r.distance = std::max(r.distance, std::abs(eq.point[i] - mn.point[i]));
  r.equal = r.distance <= kEqualityTolerance;
  const auto& lambda = f.circuit().lambda;
  r.barycentric = std::all_of(lambda.begin(), lambda.end(), [&](const Rational& l) { return l == lambda.front(); });
  const double target = 1.0 / static_cast<double>(f.ambient_dim() + 1);
  r.unit_inner_weight = std::abs(-f.inner_coeff() - target) <= kStructureTolerance;
  return r;
}

}  // namespace dsonc
