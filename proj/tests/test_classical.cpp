#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsimplex/classical.hpp"
#include "qsimplex/instances.hpp"

using namespace qsimplex;

namespace {

LpInstance module_example() {
  // A_B = I2, c_B = (1, 1)/sqrt2, A_k = (0.6, 0.8), c_k = 0.1.
  Eigen::MatrixXd A(2, 3);
  A << 1, 0, 0.6, 0, 1, 0.8;
  const double r = 1.0 / std::sqrt(2.0);
  return LpInstance::from_dense(A, Eigen::Vector2d(1, 1), Eigen::Vector3d(r, r, 0.1));
}

/// Random feasible LP [P | I] x = b with mixed-sign costs, slack start.
template <class Rng>
GeneratedLp random_dense_feasible(std::size_t m, std::size_t structural, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.5, 2.0);
  Eigen::MatrixXd A(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(structural + m));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(structural); ++j) A(i, j) = u(rng);
  A.rightCols(static_cast<Eigen::Index>(m)).setIdentity();
  Eigen::VectorXd b(static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = pos(rng);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(A.cols());
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(structural); ++j) c(j) = u(rng);
  GeneratedLp g{LpInstance::from_dense(A, b, c), {}};
  g.basis = slack_basis(g.inst);
  return g;
}

}  // namespace

TEST(ReducedCosts, BasicColumnsAreZero) {
  std::mt19937_64 rng(1);
  const GeneratedLp g = random_pricing_lp(4, 9, -1.0, rng);
  const Eigen::VectorXd rc = reduced_costs(g.inst, g.basis);
  for (std::size_t j : g.basis) EXPECT_EQ(rc(static_cast<Eigen::Index>(j)), 0.0);
  // A basic column priced as if nonbasic also has zero reduced cost.
  const Eigen::MatrixXd A = g.inst.A.to_dense();
  EXPECT_NEAR(oracle::reduced_cost(A, g.inst.c, g.basis, g.basis[2]), 0.0, 1e-12);
}

TEST(ReducedCosts, ModuleExample) {
  const LpInstance inst = module_example();
  const double rc = reduced_costs(inst, {0, 1})(2);
  EXPECT_NEAR(rc, 0.1 - 1.4 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(rc, -0.88995, 1e-5);
}

TEST(ReducedCosts, MatchesDenseInverse) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const GeneratedLp g = random_pricing_lp(5, 11, -1.0, rng);
    const Eigen::VectorXd rc = reduced_costs(g.inst, g.basis);
    const Eigen::MatrixXd A = g.inst.A.to_dense();
    for (std::size_t k = 0; k < g.inst.n(); ++k)
      EXPECT_NEAR(rc(static_cast<Eigen::Index>(k)), oracle::reduced_cost(A, g.inst.c, g.basis, k), 1e-9);
  }
}

TEST(ReducedCosts, OptimalBasisIsNonnegative) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const GeneratedLp g = random_bounded_lp(4, 5, rng);
    const ClassicalResult r = solve_classical(g.inst, g.basis);
    ASSERT_EQ(r.status, ClassicalStatus::Optimal);
    EXPECT_GE(reduced_costs(g.inst, r.basis).minCoeff(), -1e-9);
  }
}

TEST(ScaledReducedCost, ModuleExample) {
  const LpInstance inst = module_example();
  const double norm = std::sqrt(0.36 + 0.64 + 0.01);
  EXPECT_NEAR(scaled_reduced_cost(inst, {0, 1}, 2), (0.1 - 1.4 / std::sqrt(2.0)) / norm, 1e-12);
  EXPECT_NEAR(norm, 1.00499, 1e-5);
}

TEST(ScaledReducedCost, MatchesDenseInverse) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const GeneratedLp g = random_pricing_lp(4, 10, -1.0, rng);
    const Eigen::MatrixXd A = g.inst.A.to_dense();
    for (std::size_t k = 0; k < g.inst.n(); ++k)
      EXPECT_NEAR(scaled_reduced_cost(g.inst, g.basis, k), oracle::scaled_reduced_cost(A, g.inst.c, g.basis, k), 1e-9);
  }
}

// Invariant: the scaled reduced cost is invariant under positive rescaling of A and c.
TEST(ScaledReducedCost, ScaleInvariant) {
  std::mt19937_64 rng(5);
  const GeneratedLp g = random_pricing_lp(3, 8, -1.0, rng);
  const LpInstance s = LpInstance::from_dense(g.inst.A.to_dense() * 3.7, g.inst.b, g.inst.c * 0.2);
  for (std::size_t k = 0; k < g.inst.n(); ++k)
    EXPECT_NEAR(scaled_reduced_cost(g.inst, g.basis, k), scaled_reduced_cost(s, g.basis, k), 1e-10);
}

TEST(RatioTest, AllRatiosEqualPicksLowestRow) {
  // A_k = A_B x_B gives u = x_B, every ratio is 1.
  Eigen::MatrixXd AB(3, 3);
  AB << 2, 1, 0, 0, 1, 1, 1, 0, 3;
  const Eigen::Vector3d xB(0.5, 1.0, 1.5);
  Eigen::MatrixXd A(3, 4);
  A.leftCols(3) = AB;
  A.col(3) = AB * xB;
  const LpInstance inst = LpInstance::from_dense(A, AB * xB, Eigen::Vector4d(1, 1, 1, -1));
  const RatioTestResult r = ratio_test(inst, {0, 1, 2}, 3);
  ASSERT_FALSE(r.unbounded);
  EXPECT_NEAR(r.ratio, 1.0, 1e-12);
  EXPECT_EQ(r.row, 0u);
}

TEST(RatioTest, NonpositiveDirectionIsUnbounded) {
  Eigen::MatrixXd A(2, 3);
  A << 1, 0, -1, 0, 1, 0;
  const LpInstance inst = LpInstance::from_dense(A, Eigen::Vector2d(1, 1), Eigen::Vector3d(0, 0, -1));
  EXPECT_TRUE(ratio_test(inst, {0, 1}, 2).unbounded);
}

TEST(RatioTest, MatchesExhaustiveScan) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const GeneratedLp g = random_direction_lp(6, DirectionKind::Bounded, 0.1, rng);
    const RatioTestResult r = ratio_test(g.inst, g.basis, 6);
    const Eigen::MatrixXd A = g.inst.A.to_dense();
    const Eigen::MatrixXd inv = oracle::gj_inverse(oracle::basis_of(A, g.basis));
    const oracle::Ratio o = oracle::ratio_scan(inv * g.inst.b, inv * A.col(6), 1e-12 * (inv * A.col(6)).norm());
    ASSERT_EQ(r.unbounded, o.unbounded);
    EXPECT_EQ(r.row, o.row);
    EXPECT_NEAR(r.ratio, o.value, 1e-9 * std::max(1.0, o.value));
  }
}

TEST(RatioTest, DeltaFloorSkipsSmallComponents) {
  Eigen::MatrixXd A(2, 3);
  A << 1, 0, 0.01, 0, 1, 1;
  const LpInstance inst = LpInstance::from_dense(A, Eigen::Vector2d(0.001, 5), Eigen::Vector3d(0, 0, -1));
  EXPECT_EQ(ratio_test(inst, {0, 1}, 2, 0.0).row, 0u);
  EXPECT_EQ(ratio_test(inst, {0, 1}, 2, 0.1).row, 1u);
}

TEST(SolveClassical, OneDimensional) {
  Eigen::MatrixXd A(1, 2);
  A << 1, 1;
  const LpInstance inst = LpInstance::from_dense(A, Eigen::VectorXd::Ones(1), Eigen::Vector2d(-1, 0));
  const ClassicalResult r = solve_classical(inst, {1});
  EXPECT_EQ(r.status, ClassicalStatus::Optimal);
  EXPECT_DOUBLE_EQ(r.objective, -1.0);
  EXPECT_EQ(r.pivots, 1u);
}

TEST(SolveClassical, UnitBox) {
  Eigen::MatrixXd A(2, 4);
  A << 1, 0, 1, 0, 0, 1, 0, 1;
  const LpInstance inst = LpInstance::from_dense(A, Eigen::Vector2d(1, 1), Eigen::Vector4d(-1, -1, 0, 0));
  const ClassicalResult r = solve_classical(inst, slack_basis(inst));
  EXPECT_EQ(r.status, ClassicalStatus::Optimal);
  EXPECT_NEAR(r.objective, -2.0, 1e-12);
}

TEST(SolveClassical, DetectsUnbounded) {
  Eigen::MatrixXd A(2, 4);
  A << 1, -1, 1, 0, -2, 1, 0, 1;
  const LpInstance inst = LpInstance::from_dense(A, Eigen::Vector2d(1, 2), Eigen::Vector4d(-1, -1, 0, 0));
  const ClassicalResult r = solve_classical(inst, {2, 3});
  EXPECT_EQ(r.status, ClassicalStatus::Unbounded);
  EXPECT_EQ(r.unbounded_column, std::optional<std::size_t>(1));
}

TEST(SolveClassical, RejectsInfeasibleStart) {
  Eigen::MatrixXd A(1, 2);
  A << 1, 1;
  const LpInstance inst = LpInstance::from_dense(A, -Eigen::VectorXd::Ones(1), Eigen::Vector2d(-1, 0));
  try {
    solve_classical(inst, {1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleStart);
  }
}

TEST(SolveClassical, MatchesTableauOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> mdist(2, 6);
  int optimal = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = mdist(rng);
    std::uniform_int_distribution<std::size_t> sdist(1, 12 - m);
    const GeneratedLp g = random_dense_feasible(m, sdist(rng), rng);
    const Eigen::MatrixXd A = g.inst.A.to_dense();
    const oracle::TableauResult o = oracle::tableau_simplex(A, g.inst.b, g.inst.c, g.basis);
    for (PivotRule rule : {PivotRule::Dantzig, PivotRule::Bland, PivotRule::RandomEligible}) {
      ClassicalOptions opts;
      opts.rule = rule;
      opts.seed = static_cast<std::uint64_t>(trial);
      const ClassicalResult r = solve_classical(g.inst, g.basis, opts);
      if (o.status == oracle::Status::Unbounded) {
        EXPECT_EQ(r.status, ClassicalStatus::Unbounded);
      } else {
        ASSERT_EQ(r.status, ClassicalStatus::Optimal);
        EXPECT_NEAR(r.objective, o.objective, 1e-8 * std::max(1.0, std::abs(o.objective)));
      }
    }
    optimal += o.status == oracle::Status::Optimal;
  }
  EXPECT_GT(optimal, 0);
}

// Invariant: every iterate stays primal feasible and the objective never increases.
TEST(SolveClassical, MonotoneAndFeasible) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const GeneratedLp g = random_dense_feasible(5, 6, rng);
    const ClassicalResult r = solve_classical(g.inst, g.basis);
    std::vector<std::size_t> basis = g.basis;
    double obj = g.inst.c.dot(basic_solution(g.inst, basis));
    for (std::size_t p = 0; p < r.pivots; ++p) {
      const ClassicalPivotReport& rep = r.reports[p];
      EXPECT_EQ(basis[rep.leaving_row], rep.leaving_column);
      basis[rep.leaving_row] = rep.entering;
      const Eigen::VectorXd x = basic_solution(g.inst, basis);
      EXPECT_GE(x.minCoeff(), -1e-9);
      const double next = g.inst.c.dot(x);
      EXPECT_LE(next, obj + 1e-9);
      obj = next;
    }
  }
}

TEST(SolveClassical, PivotCountWithinCap) {
  std::mt19937_64 rng(9);
  const GeneratedLp g = random_dense_feasible(6, 6, rng);
  ClassicalOptions opts;
  opts.max_pivots = 1;
  const ClassicalResult r = solve_classical(g.inst, g.basis, opts);
  EXPECT_LE(r.pivots, 1u);
}

TEST(SlackBasis, FindsUnitColumns) {
  Eigen::MatrixXd A(2, 4);
  A << 3, 1, 1, 0, 1, 1, 0, 1;
  const LpInstance inst = LpInstance::from_dense(A, Eigen::Vector2d(1, 1), Eigen::Vector4d(1, 1, 0, 0));
  EXPECT_EQ(slack_basis(inst), (std::vector<std::size_t>{2, 3}));
}
