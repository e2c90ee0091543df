#pragma once

// Equilibria, minimizers and the boundary generator for full-dimensional
// circuit functions. Both the equilibrium and the minimizer are solutions of
// small square linear systems obtained after taking logarithms.

#include <span>
#include <vector>

#include "dsonc/geometry.hpp"
#include "dsonc/signomial.hpp"

namespace dsonc {

struct EquilibriumResult {
  std::vector<double> point;
  // s with c_α·exp(<point, α−β>) = exp(s) for every vertex α.
  double common_log_value = 0.0;
};

// Minimizer of the β-normalized function Σ c_α e^{<x, α−β>} + c_β.
struct MinimizerResult {
  std::vector<double> point;
  double scale = 0.0;  // t with c_α e^{<x*, α−β>} = t·λ_α
  double value = 0.0;  // t + c_β
};

// Throws DegenerateCircuit unless the circuit is full-dimensional.
EquilibriumResult equilibrium_point(const CircuitFunction& f);
MinimizerResult minimizer(const CircuitFunction& f);

// Σ c_α e^{<x, α−β>} + c_β, the function minimized by `minimizer`.
double normalized_value(const CircuitFunction& f, std::span<const double> x);

// Requires c_β < 0 (PreconditionViolation otherwise).
bool is_dsonc_boundary_via_equilibrium(const CircuitFunction& f);
bool tropical_genus_zero(const CircuitFunction& f);

// c_α = t·e^{−<w, α−β>}, c_β = −t: a DSONC boundary function with equilibrium w.
CircuitFunction generate_boundary_function(const Circuit& circuit, std::span<const double> w, double t);

struct MinimizerEquilibriumReport {
  bool equal = false;
  double distance = 0.0;          // ‖x* − eq(f)‖∞
  bool barycentric = false;       // all λ_α coincide
  bool unit_inner_weight = false;  // |c_β| = 1/(n+1)
};

MinimizerEquilibriumReport minimizer_equals_equilibrium(const CircuitFunction& f);

}  // namespace dsonc
