#include "dsonc/signomial.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "dsonc/detail/exact_linalg.hpp"
#include "dsonc/error.hpp"

namespace dsonc {

Signomial::Signomial(SupportSet support, std::vector<double> coefficients)
    : support_(std::move(support)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != support_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient count differs from support size");
  }
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
  }
}

Signomial Signomial::from_terms(std::size_t dim, std::vector<Term> terms) {
  std::vector<Point> order;
  std::map<Point, double> merged;
  for (auto& t : terms) {
    if (t.exponent.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "term exponent dimension");
    auto [it, inserted] = merged.try_emplace(t.exponent, 0.0);
    if (inserted) order.push_back(t.exponent);
    it->second += t.coefficient;
  }
  std::vector<Point> points;
  std::vector<double> coeffs;
  for (auto& p : order) {
    const double c = merged[p];
    if (std::abs(c) < kDropTolerance) continue;
    coeffs.push_back(c);
    points.push_back(std::move(p));
  }
  return Signomial(SupportSet(dim, std::move(points)), std::move(coeffs));
}

double Signomial::coefficient_of(const Point& exponent) const {
  const auto i = support_.index_of(exponent);
  return i ? coefficients_[*i] : 0.0;
}

std::vector<Term> Signomial::terms() const {
  std::vector<Term> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(Term{coefficients_[i], support_[i]});
  return out;
}

Signomial Signomial::normalized() const { return from_terms(dim(), terms()); }

double evaluate(const Signomial& f, std::span<const double> x) {
  if (x.size() != f.dim()) throw Error(ErrorCode::DimensionMismatch, "evaluation point dimension");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f.coefficient(i) * std::exp(dot(x, f.support()[i]));
  return sum;
}

SignedSupport sign_decomposition(const Signomial& f) {
  std::vector<bool> negative(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) negative[i] = f.coefficient(i) < 0;
  return SignedSupport(f.support(), negative);
}

Signomial affine_transform(const Signomial& f, const RationalMatrix& m, std::span<const Rational> a) {
  const std::size_t n = f.dim();
  if (m.size() != n || a.size() != n) throw Error(ErrorCode::DimensionMismatch, "transform dimension");
  for (const auto& row : m) {
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "transform matrix must be square");
  }
  if (sgn(detail::determinant(m)) == 0) throw Error(ErrorCode::SingularMatrix, "transform matrix is singular");
  std::vector<double> shift(n);
  for (std::size_t i = 0; i < n; ++i) shift[i] = to_double(a[i]);
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    const Point& alpha = f.support()[k];
    std::vector<Rational> image(n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) image[j] += m[i][j] * alpha[i];
    }
    terms.push_back(Term{f.coefficient(k) * std::exp(dot(shift, alpha)), Point(std::move(image))});
  }
  return Signomial::from_terms(n, std::move(terms));
}

Signomial shift_exponents(const Signomial& f, const Point& shift) {
  auto terms = f.terms();
  for (auto& t : terms) t.exponent = t.exponent + shift;
  return Signomial::from_terms(f.dim(), std::move(terms));
}

Signomial polynomial_reduction(const Signomial& p) {
  auto terms = p.terms();
  for (auto& t : terms) {
    if (!t.exponent.is_even()) t.coefficient = -std::abs(t.coefficient);
  }
  return Signomial::from_terms(p.dim(), std::move(terms));
}

std::string to_display_string(const Signomial& f, DisplayMode mode) {
  if (f.size() == 0) return "0";
  std::ostringstream os;
  os.precision(17);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double c = f.coefficient(k);
    if (k) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    os << std::abs(c);
    const Point& alpha = f.support()[k];
    if (alpha.is_zero()) continue;
    if (mode == DisplayMode::Polynomial) {
      for (std::size_t i = 0; i < alpha.dim(); ++i) {
        if (sgn(alpha[i]) == 0) continue;
        os << "*x" << (i + 1);
        if (alpha[i] != 1) os << '^' << to_string(alpha[i]);
      }
    } else {
      os << "*exp(";
      bool first = true;
      for (std::size_t i = 0; i < alpha.dim(); ++i) {
        if (sgn(alpha[i]) == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (alpha[i] != 1) os << to_string(alpha[i]) << '*';
        os << 'x' << (i + 1);
      }
      os << ')';
    }
  }
  return os.str();
}

CircuitFunction::CircuitFunction(Circuit circuit, std::vector<double> positive_coeffs, double inner_coeff)
    : circuit_(std::move(circuit)), positive_coeffs_(std::move(positive_coeffs)), inner_coeff_(inner_coeff) {
  if (positive_coeffs_.size() != circuit_.vertices.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one coefficient per circuit vertex required");
  }
  for (double c : positive_coeffs_) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw Error(ErrorCode::InvalidArgument, "circuit vertex coefficients must be positive and finite");
    }
  }
  if (!std::isfinite(inner_coeff_)) throw Error(ErrorCode::InvalidArgument, "non-finite inner coefficient");
}

CircuitFunction CircuitFunction::from_signomial(const Signomial& f) {
  const auto cls = classify_point_set(f.support());
  if (cls.kind != PointSetKind::SimplicialCircuit) {
    throw Error(ErrorCode::NotACircuit, "support is not a simplicial circuit (" + to_string(cls.reason) + ")");
  }
  std::vector<double> positive;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i != cls.inner_index) positive.push_back(f.coefficient(i));
  }
  return CircuitFunction(*cls.circuit, std::move(positive), f.coefficient(cls.inner_index));
}

Signomial CircuitFunction::to_signomial() const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < positive_coeffs_.size(); ++i) {
    terms.push_back(Term{positive_coeffs_[i], circuit_.vertices[i]});
  }
  terms.push_back(Term{inner_coeff_, circuit_.inner});
  return Signomial::from_terms(ambient_dim(), std::move(terms));
}

AgeFunction::AgeFunction(std::vector<Term> positive, Point inner, double inner_coeff)
    : positive_(std::move(positive)), inner_(std::move(inner)), inner_coeff_(inner_coeff) {
  for (const auto& t : positive_) {
    if (t.exponent.dim() != inner_.dim()) throw Error(ErrorCode::DimensionMismatch, "AGE exponent dimension");
    if (!(t.coefficient >= 0.0) || !std::isfinite(t.coefficient)) {
      throw Error(ErrorCode::InvalidArgument, "AGE positive coefficients must be nonnegative and finite");
    }
    if (t.exponent == inner_) throw Error(ErrorCode::InvalidArgument, "inner point repeats a positive exponent");
  }
  if (!std::isfinite(inner_coeff_)) throw Error(ErrorCode::InvalidArgument, "non-finite inner coefficient");
}

Signomial AgeFunction::to_signomial() const {
  auto terms = positive_;
  terms.push_back(Term{inner_coeff_, inner_});
  return Signomial::from_terms(dim(), std::move(terms));
}

CircuitFunction hadamard_combine(const CircuitFunction& f, const CircuitFunction& g) {
  if (f.circuit().vertices != g.circuit().vertices || f.circuit().inner != g.circuit().inner) {
    throw Error(ErrorCode::SupportMismatch, "circuit functions live on different circuits");
  }
  if (!(f.inner_coeff() < 0.0) || !(g.inner_coeff() < 0.0)) {
    throw Error(ErrorCode::NonNegativeInnerCoefficient, "both inner coefficients must be negative");
  }
  std::vector<double> coeffs(f.positive_coeffs().size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = f.positive_coeffs()[i] * g.positive_coeffs()[i];
  return CircuitFunction(f.circuit(), std::move(coeffs), -f.inner_coeff() * g.inner_coeff());
}

}  // namespace dsonc
