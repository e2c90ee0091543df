#pragma once

// Dense two-phase simplex (Bland's rule) for the small LPs produced by the
// cone tests, plus an exact rational phase-1 used for hull and Λ queries.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dsonc/geometry.hpp"
#include "dsonc/rational.hpp"

namespace dsonc::lp {

struct Constraint {
  std::vector<double> row;
  double rhs = 0.0;
};

// maximize objective·x subject to row·x <= rhs, x free.
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;

  void add(std::vector<double> row, double rhs) { constraints.push_back({std::move(row), rhs}); }
};

struct Tolerances {
  double feasibility = 1e-8;
  double pivot = 1e-12;
  double optimality = 1e-9;
  std::size_t max_iterations = 50000;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Outcome {
  Status status = Status::Infeasible;
  std::vector<double> solution;
  double value = 0.0;
  // Multipliers y >= 0 with Aᵀy = objective and rhsᵀy = value (Optimal only).
  std::vector<double> duals;
};

// Throws Error(NumericalBreakdown) rather than report a wrong answer.
Outcome solve(const LinearProgram& lp, const Tolerances& tol = {});

// Basic feasible solution of {x >= 0 : A x = b} in exact arithmetic, or
// nullopt when the system is infeasible.
std::optional<std::vector<Rational>> exact_feasible_point(const RationalMatrix& a,
                                                          std::span<const Rational> b);

// One vertex of Λ(A+, β); nullopt when β ∉ conv(A+).
std::optional<std::vector<Rational>> feasible_point(const LambdaPolytope& polytope);

}  // namespace dsonc::lp
