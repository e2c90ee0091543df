#include "dsonc/detail/exact_linalg.hpp"

#include <utility>

#include "dsonc/error.hpp"

namespace dsonc::detail {

namespace {

// Reduces m to reduced row echelon form restricted to the first `cols`
// columns; trailing columns are carried along. Returns the pivot columns.
std::vector<std::size_t> reduce(RationalMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(RationalMatrix m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  return reduce(m, cols).size();
}

MultiSolve solve_columns(const RationalMatrix& a, const std::vector<std::vector<Rational>>& rhs) {
  MultiSolve out;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  RationalMatrix m(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
    m[i] = a[i];
    for (const auto& b : rhs) {
      if (b.size() != rows) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
      m[i].push_back(b[i]);
    }
  }
  const auto pivots = reduce(m, cols);
  out.full_column_rank = pivots.size() == cols;
  if (!out.full_column_rank) return out;
  out.solutions.reserve(rhs.size());
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    const std::size_t col = cols + k;
    bool consistent = true;
    for (std::size_t i = cols; i < rows; ++i) {
      if (sgn(m[i][col]) != 0) {
        consistent = false;
        break;
      }
    }
    if (!consistent) {
      out.solutions.emplace_back(std::nullopt);
      continue;
    }
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < cols; ++i) x[pivots[i]] = m[i][col];
    out.solutions.emplace_back(std::move(x));
  }
  return out;
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[c].size() != n) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace dsonc::detail
