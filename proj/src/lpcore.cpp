#include "dsonc/lpcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dsonc/error.hpp"

namespace dsonc::lp {

namespace {

[[noreturn]] void breakdown(const std::string& what) {
  throw Error(ErrorCode::NumericalBreakdown, "simplex breakdown: " + what);
}

// Dense tableau over x+ (n), x- (n), slacks (m) and artificials.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const Tolerances& tol) : tol_(tol), n_(lp.variables), m_(lp.constraints.size()) {
    std::size_t artificials = 0;
    for (const auto& c : lp.constraints) {
      if (c.rhs < 0) ++artificials;
    }
    first_art_ = 2 * n_ + m_;
    cols_ = first_art_ + artificials;
    rows_.assign(m_, std::vector<double>(cols_ + 1, 0.0));
    basis_.assign(m_, 0);
    std::size_t art = first_art_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& c = lp.constraints[i];
      const double sign = c.rhs < 0 ? -1.0 : 1.0;
      auto& row = rows_[i];
      for (std::size_t j = 0; j < n_; ++j) {
        row[j] = sign * c.row[j];
        row[n_ + j] = -sign * c.row[j];
      }
      row[2 * n_ + i] = sign;
      row[cols_] = sign * c.rhs;
      if (c.rhs < 0) {
        row[art] = 1.0;
        basis_[i] = art++;
      } else {
        basis_[i] = 2 * n_ + i;
      }
    }
  }

  bool has_artificials() const { return cols_ > first_art_; }

  // Phase 1: maximize -Σ artificials. Returns false if infeasible.
  bool phase_one(double scale) {
    std::vector<double> cost(cols_, 0.0);
    for (std::size_t j = first_art_; j < cols_; ++j) cost[j] = -1.0;
    price(cost);
    if (run(cols_) != Status::Optimal) breakdown("phase 1 reported unbounded");
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] >= first_art_) infeasibility += rows_[i][cols_];
    }
    if (infeasibility > tol_.feasibility * scale) return false;
    drive_out_artificials();
    return true;
  }

  Status phase_two(const std::vector<double>& objective) {
    std::vector<double> cost(cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      cost[j] = objective[j];
      cost[n_ + j] = -objective[j];
    }
    price(cost);
    return run(first_art_);
  }

  std::vector<double> solution() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t b = basis_[i];
      if (b < n_) x[b] += rows_[i][cols_];
      else if (b < 2 * n_) x[b - n_] -= rows_[i][cols_];
    }
    return x;
  }

  std::vector<double> duals() const {
    std::vector<double> y(m_);
    for (std::size_t i = 0; i < m_; ++i) y[i] = std::max(0.0, -reduced_[2 * n_ + i]);
    return y;
  }

 private:
  void price(const std::vector<double>& cost) {
    reduced_ = cost;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * rows_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    auto& prow = rows_[r];
    const double p = prow[e];
    if (std::abs(p) < tol_.pivot) breakdown("pivot magnitude below floor");
    for (auto& v : prow) v /= p;
    prow[e] = 1.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      const double f = rows_[i][e];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) rows_[i][j] -= f * prow[j];
      rows_[i][e] = 0.0;
    }
    const double f = reduced_[e];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= f * prow[j];
      reduced_[e] = 0.0;
    }
    basis_[r] = e;
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving basic.
  Status run(std::size_t allowed_cols) {
    for (std::size_t iter = 0; iter < tol_.max_iterations; ++iter) {
      std::size_t enter = allowed_cols;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (reduced_[j] > tol_.optimality) {
          enter = j;
          break;
        }
      }
      if (enter == allowed_cols) return Status::Optimal;
      std::size_t leave = rows_.size();
      double best = std::numeric_limits<double>::infinity();
      bool tiny = false;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const double a = rows_[i][enter];
        if (a <= tol_.pivot) {
          if (a > 0.0) tiny = true;
          continue;
        }
        const double ratio = std::max(0.0, rows_[i][cols_]) / a;
        if (leave == rows_.size()) {
          best = ratio;
          leave = i;
          continue;
        }
        const double slack = 1e-12 * (1.0 + std::abs(best));
        if (ratio < best - slack) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + slack && basis_[i] < basis_[leave]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave == rows_.size()) {
        if (tiny) breakdown("only sub-floor pivots in entering column");
        return Status::Unbounded;
      }
      pivot(leave, enter);
    }
    breakdown("iteration limit reached");
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < first_art_) {
        ++i;
        continue;
      }
      std::size_t col = first_art_;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (std::abs(rows_[i][j]) > tol_.pivot) {
          col = j;
          break;
        }
      }
      if (col < first_art_) {
        pivot(i, col);
        ++i;
      } else {
        // Redundant equality row.
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  Tolerances tol_;
  std::size_t n_;
  std::size_t m_;
  std::size_t first_art_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<std::size_t> basis_;
  std::vector<double> reduced_;
};

void validate(const LinearProgram& lp) {
  if (lp.objective.size() != lp.variables) {
    throw Error(ErrorCode::DimensionMismatch, "objective length differs from variable count");
  }
  for (double v : lp.objective) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite objective entry");
  }
  for (const auto& c : lp.constraints) {
    if (c.row.size() != lp.variables) {
      throw Error(ErrorCode::DimensionMismatch, "constraint row length differs from variable count");
    }
    if (!std::isfinite(c.rhs)) throw Error(ErrorCode::InvalidArgument, "non-finite right-hand side");
    for (double v : c.row) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite constraint entry");
    }
  }
}

}  // namespace

Outcome solve(const LinearProgram& lp, const Tolerances& tol) {
  validate(lp);
  double scale = 1.0;
  for (const auto& c : lp.constraints) scale = std::max(scale, std::abs(c.rhs));

  Tableau tableau(lp, tol);
  Outcome out;
  if (tableau.has_artificials() && !tableau.phase_one(scale)) {
    out.status = Status::Infeasible;
    return out;
  }
  out.status = tableau.phase_two(lp.objective);
  if (out.status != Status::Optimal) return out;

  out.solution = tableau.solution();
  out.duals = tableau.duals();
  out.value = 0.0;
  for (std::size_t j = 0; j < lp.variables; ++j) out.value += lp.objective[j] * out.solution[j];
  for (const auto& c : lp.constraints) {
    double lhs = 0.0;
    double mag = std::abs(c.rhs);
    for (std::size_t j = 0; j < lp.variables; ++j) {
      lhs += c.row[j] * out.solution[j];
      mag = std::max(mag, std::abs(c.row[j] * out.solution[j]));
    }
    if (lhs - c.rhs > tol.feasibility * std::max(1.0, mag)) breakdown("returned point violates a constraint");
  }
  return out;
}

std::optional<std::vector<Rational>> exact_feasible_point(const RationalMatrix& a, std::span<const Rational> b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  const std::size_t n = m == 0 ? 0 : a.front().size();
  const std::size_t cols = n + m;
  RationalMatrix t(m, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::DimensionMismatch, "ragged constraint matrix");
    const int sign = sgn(b[i]) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * a[i][j];
    t[i][n + i] = 1;
    t[i][cols] = sign * b[i];
    basis[i] = n + i;
  }
  // Reduced costs of maximize -Σ artificials.
  std::vector<Rational> reduced(cols);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) reduced[j] += t[i][j];
  }
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(reduced[j]) > 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    // Phase 1 is bounded above by zero, so an entering column always has a pivot.
    if (leave == m) break;
    const Rational p = t[leave][enter];
    for (auto& v : t[leave]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    const Rational f = reduced[enter];
    for (std::size_t j = 0; j < cols; ++j) reduced[j] -= f * t[leave][j];
    basis[leave] = enter;
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n) {
      if (sgn(t[i][cols]) != 0) return std::nullopt;
    } else {
      x[basis[i]] = t[i][cols];
    }
  }
  return x;
}

std::optional<std::vector<Rational>> feasible_point(const LambdaPolytope& polytope) {
  const auto rhs = polytope.constraint_rhs();
  return exact_feasible_point(polytope.constraint_matrix(), rhs);
}

}  // namespace dsonc::lp
