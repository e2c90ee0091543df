#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace dsonc {

using Rational = mpq_class;

// Parses "3", "-4/3" or a finite decimal such as "0.5" / "-1.25" into an
// exact rational. Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

// Canonical "p" or "p/q" form.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

bool is_integer(const Rational& value);

// Exact rational approximation of a finite double (binary expansion).
Rational from_double(double value);

using RationalMatrix = std::vector<std::vector<Rational>>;

}  // namespace dsonc
