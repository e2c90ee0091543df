#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsonc/geometry.hpp"

namespace dsonc {

// Coefficients below this magnitude are treated as zero after merges.
inline constexpr double kDropTolerance = 1e-15;

struct Term {
  double coefficient = 0.0;
  Point exponent;
};

// f(x) = Σ c_α exp(<x, α>) with exact exponents and double coefficients.
class Signomial {
 public:
  Signomial() = default;
  Signomial(SupportSet support, std::vector<double> coefficients);

  // Sums coefficients of repeated exponents, then normalizes.
  static Signomial from_terms(std::size_t dim, std::vector<Term> terms);

  std::size_t dim() const { return support_.dim(); }
  std::size_t size() const { return support_.size(); }
  const SupportSet& support() const { return support_; }
  std::span<const double> coefficients() const { return coefficients_; }
  double coefficient(std::size_t i) const { return coefficients_[i]; }
  // Zero when the exponent is not in the support.
  double coefficient_of(const Point& exponent) const;
  std::vector<Term> terms() const;

  // Drops terms with |c| < kDropTolerance.
  Signomial normalized() const;

  friend bool operator==(const Signomial&, const Signomial&) = default;

 private:
  SupportSet support_;
  std::vector<double> coefficients_;
};

double evaluate(const Signomial& f, std::span<const double> x);

// Partition of the support by coefficient sign. Throws VertexSignViolation
// if a vertex of the Newton polytope has a negative coefficient.
SignedSupport sign_decomposition(const Signomial& f);

// g(x) = f(Mx + a): exponents become Mᵀα, coefficients c_α·exp(<a, α>).
Signomial affine_transform(const Signomial& f, const RationalMatrix& m, std::span<const Rational> a);

// exp(<x, shift>)·f(x), i.e. every exponent translated by `shift`.
Signomial shift_exponents(const Signomial& f, const Point& shift);

// Exponential sum whose nonnegativity on R^n implies that of the polynomial
// Σ c_α x^α on R^n: every term with a non-even exponent gets coefficient −|c_α|.
Signomial polynomial_reduction(const Signomial& p);

enum class DisplayMode { Exponential, Polynomial };
std::string to_display_string(const Signomial& f, DisplayMode mode);

class CircuitFunction {
 public:
  CircuitFunction(Circuit circuit, std::vector<double> positive_coeffs, double inner_coeff);

  // Throws Error(NotACircuit) unless the support is a simplicial circuit.
  static CircuitFunction from_signomial(const Signomial& f);

  const Circuit& circuit() const { return circuit_; }
  std::span<const double> positive_coeffs() const { return positive_coeffs_; }
  double inner_coeff() const { return inner_coeff_; }
  std::size_t ambient_dim() const { return circuit_.ambient_dim(); }

  Signomial to_signomial() const;

 private:
  Circuit circuit_;
  std::vector<double> positive_coeffs_;
  double inner_coeff_;
};

// Σ_{α ∈ A+} c_α e^{<x,α>} + c_β e^{<x,β>} with c_α >= 0.
class AgeFunction {
 public:
  AgeFunction(std::vector<Term> positive, Point inner, double inner_coeff);

  const std::vector<Term>& positive() const { return positive_; }
  const Point& inner() const { return inner_; }
  double inner_coeff() const { return inner_coeff_; }
  std::size_t dim() const { return inner_.dim(); }

  Signomial to_signomial() const;

 private:
  std::vector<Term> positive_;
  Point inner_;
  double inner_coeff_;
};

// Entrywise product of two circuit functions on the same circuit, with the
// inner coefficient −c_β·d_β.
CircuitFunction hadamard_combine(const CircuitFunction& f, const CircuitFunction& g);

}  // namespace dsonc
