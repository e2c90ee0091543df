#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dsonc/rational.hpp"

namespace dsonc::detail {

std::size_t rank(RationalMatrix m);

// Solves A x = b for several right-hand sides at once. When A lacks full
// column rank the solutions are not unique and `full_column_rank` is false;
// otherwise each entry holds the unique solution or nullopt if inconsistent.
struct MultiSolve {
  bool full_column_rank = false;
  std::vector<std::optional<std::vector<Rational>>> solutions;
};

MultiSolve solve_columns(const RationalMatrix& a, const std::vector<std::vector<Rational>>& rhs);

// Exact determinant by fraction-preserving elimination.
Rational determinant(RationalMatrix m);

}  // namespace dsonc::detail
