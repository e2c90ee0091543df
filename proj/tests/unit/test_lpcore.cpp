#include <doctest.h>

#include <cmath>

#include "dsonc/error.hpp"
#include "dsonc/lpcore.hpp"
#include "testing.hpp"

using namespace dsonc;
using namespace dsonc::testing;

namespace {

lp::LinearProgram random_lp(Rng& rng) {
  lp::LinearProgram prog;
  prog.variables = static_cast<std::size_t>(rng.integer(1, 6));
  const std::size_t n = prog.variables;
  for (std::size_t i = 0; i < n; ++i) prog.objective.push_back(rng.uniform(-1, 1));
  // A box keeps the problem bounded; the origin keeps it feasible.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n, 0.0);
    row[i] = 1.0;
    prog.add(row, rng.uniform(1, 5));
    row[i] = -1.0;
    prog.add(row, rng.uniform(1, 5));
  }
  const std::size_t extra = static_cast<std::size_t>(rng.integer(0, static_cast<long>(12 - 2 * n)));
  for (std::size_t k = 0; k < extra; ++k) {
    std::vector<double> row(n);
    for (auto& x : row) x = rng.uniform(-2, 2);
    prog.add(row, rng.uniform(0.1, 3));
  }
  return prog;
}

}  // namespace

TEST_SUITE("lpcore") {
  TEST_CASE("one-variable optimum") {
    lp::LinearProgram prog{1, {1.0}, {}};
    prog.add({1.0}, 3.0);
    prog.add({-1.0}, 0.0);
    const auto out = lp::solve(prog);
    REQUIRE(out.status == lp::Status::Optimal);
    CHECK(out.solution[0] == doctest::Approx(3.0));
    CHECK(out.value == doctest::Approx(3.0));
  }

  TEST_CASE("infeasible and unbounded") {
    lp::LinearProgram inf{1, {1.0}, {}};
    inf.add({1.0}, -1.0);
    inf.add({-1.0}, -1.0);
    CHECK(lp::solve(inf).status == lp::Status::Infeasible);
    lp::LinearProgram unb{1, {1.0}, {}};
    unb.add({-1.0}, 0.0);
    CHECK(lp::solve(unb).status == lp::Status::Unbounded);
  }

  TEST_CASE("DSONC bound LP for three unit exponentials") {
    // Variables (τ₁, τ₂, ℓ): maximize ℓ with ℓ − αᵀτ ≤ ln 1.
    lp::LinearProgram prog{3, {0.0, 0.0, 1.0}, {}};
    for (auto [a, b] : {std::pair{2.0, 0.0}, {0.0, 2.0}, {-2.0, -2.0}}) prog.add({-a, -b, 1.0}, 0.0);
    const auto out = lp::solve(prog);
    REQUIRE(out.status == lp::Status::Optimal);
    CHECK(out.value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::exp(out.value) == doctest::Approx(1.0));
    // Dual multipliers are the barycentric coordinates of the origin.
    for (double y : out.duals) CHECK(y == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  }

  TEST_CASE("feasible_point on Λ-polytopes") {
    const LambdaPolytope motz{{P({4, 2}), P({2, 4}), P({0, 0})}, P({2, 2})};
    const auto lam = lp::feasible_point(motz);
    REQUIRE(lam.has_value());
    CHECK(*lam == std::vector{Q(1, 3), Q(1, 3), Q(1, 3)});

    const LambdaPolytope seg{{P({0}), P({1}), P({3})}, P({2})};
    const auto v = lp::feasible_point(seg);
    REQUIRE(v.has_value());
    CHECK(seg.contains(std::span<const Rational>(*v)));
    const bool is_vertex = *v == std::vector{Q(0), Q(1, 2), Q(1, 2)} || *v == std::vector{Q(1, 3), Q(0), Q(2, 3)};
    CHECK(is_vertex);

    const LambdaPolytope outside{{P({0}), P({1})}, P({2})};
    CHECK_FALSE(lp::feasible_point(outside).has_value());
  }

  TEST_CASE("solve is deterministic") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
      const auto prog = random_lp(rng);
      const auto a = lp::solve(prog);
      const auto b = lp::solve(prog);
      CHECK(a.status == b.status);
      CHECK(a.solution == b.solution);
      CHECK(a.value == b.value);
    }
  }

  TEST_CASE("property: optimum matches vertex enumeration, residuals and duals are sound") {
    Rng rng(32);
    for (int t = 0; t < 200; ++t) {
      const auto prog = random_lp(rng);
      const auto out = lp::solve(prog);
      const auto oracle = lp_vertex_oracle(prog);
      REQUIRE(oracle.has_value());
      REQUIRE(out.status == lp::Status::Optimal);
      CHECK(std::abs(out.value - *oracle) <= 1e-7 * std::max(1.0, std::abs(*oracle)));
      double obj = 0.0;
      for (std::size_t i = 0; i < prog.variables; ++i) obj += prog.objective[i] * out.solution[i];
      CHECK(std::abs(obj - out.value) <= 1e-9 * std::max(1.0, std::abs(obj)));
      for (const auto& c : prog.constraints) {
        double s = 0.0;
        for (std::size_t i = 0; i < prog.variables; ++i) s += c.row[i] * out.solution[i];
        CHECK(s <= c.rhs + 1e-8);
      }
      // Dual feasibility: y >= 0 and Aᵀy = objective.
      REQUIRE(out.duals.size() == prog.constraints.size());
      for (std::size_t i = 0; i < prog.variables; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < prog.constraints.size(); ++k) {
          CHECK(out.duals[k] >= -1e-9);
          s += prog.constraints[k].row[i] * out.duals[k];
        }
        CHECK(s == doctest::Approx(prog.objective[i]).epsilon(1e-7));
      }
    }
  }

  TEST_CASE("exact phase one") {
    const RationalMatrix a{{1, 1, 1}, {0, 1, 3}};
    const std::vector<Rational> b{1, 2};
    const auto x = lp::exact_feasible_point(a, b);
    REQUIRE(x.has_value());
    CHECK((*x)[0] + (*x)[1] + (*x)[2] == 1);
    CHECK((*x)[1] + 3 * (*x)[2] == 2);
    const std::vector<Rational> far{1, 4};
    CHECK_FALSE(lp::exact_feasible_point(a, far).has_value());
  }
}
