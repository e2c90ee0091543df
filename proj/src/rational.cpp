#include "dsonc/rational.hpp"

#include <cctype>
#include <cmath>

#include "dsonc/error.hpp"

namespace dsonc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotASimplex: return "NotASimplex";
    case ErrorCode::NotInRelativeInterior: return "NotInRelativeInterior";
    case ErrorCode::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorCode::VertexSignViolation: return "VertexSignViolation";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::NonNegativeInnerCoefficient: return "NonNegativeInnerCoefficient";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::InfeasibleLambda: return "InfeasibleLambda";
    case ErrorCode::DegenerateCircuit: return "DegenerateCircuit";
    case ErrorCode::BoxTooLarge: return "BoxTooLarge";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::NotACircuit: return "NotACircuit";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_rational(std::string_view text) {
  throw ParseError("not an exact rational: \"" + std::string(text) + "\"");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_rational(text);
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) bad_rational(text);
    value = Rational(n, d);
    value.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      bad_rational(text);
    }
    mpz_class n(whole.empty() ? std::string("0") : std::string(whole), 10);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac), 10);
    value = Rational(n * scale + f, scale);
    value.canonicalize();
  } else {
    if (!all_digits(body)) bad_rational(text);
    value = Rational(mpz_class(std::string(body), 10));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, "cannot convert a non-finite double to a rational");
  }
  return Rational(value);
}

}  // namespace dsonc
