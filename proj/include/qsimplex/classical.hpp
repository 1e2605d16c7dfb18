#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/error.hpp"
#include "qsimplex/lp.hpp"

namespace qsimplex {

/// LU factorizations of A_B and A_B^T with a singularity check.
class BasisFactor {
 public:
  BasisFactor(const LpInstance& inst, const std::vector<std::size_t>& basis)
      : BasisFactor(basis_matrix(inst, basis)) {}
  explicit BasisFactor(const Eigen::MatrixXd& AB) : lu_(AB), lut_(AB.transpose()) {
    require(lu_.isInvertible(), ErrorCode::BasisSingular, "basis columns are linearly dependent");
  }

  [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const { return lu_.solve(rhs); }
  [[nodiscard]] Eigen::VectorXd solve_transpose(const Eigen::VectorXd& rhs) const {
    return lut_.solve(rhs);
  }
  [[nodiscard]] Eigen::MatrixXd inverse() const { return lu_.inverse(); }

 private:
  Eigen::FullPivLU<Eigen::MatrixXd> lu_;
  Eigen::FullPivLU<Eigen::MatrixXd> lut_;
};

/// Full-length reduced-cost vector; basic positions are exactly zero.
inline Eigen::VectorXd reduced_costs(const LpInstance& inst, const std::vector<std::size_t>& basis) {
  const BasisFactor lu(inst, basis);
  const Eigen::VectorXd y = lu.solve_transpose(inst.costs(basis));
  Eigen::VectorXd rc = inst.c - inst.A.multiply_transpose(y);
  for (std::size_t j : basis) rc(static_cast<Eigen::Index>(j)) = 0.0;
  return rc;
}

/// Column k's reduced cost divided by ||(A_B^-1 A_k, c_k / ||c_B||)||, the
/// quantity every pricing guarantee is stated against. With c_B = 0 the cost
/// is left unscaled.
inline double scaled_reduced_cost(const LpInstance& inst, const std::vector<std::size_t>& basis,
                                  std::size_t k) {
  const BasisFactor lu(inst, basis);
  const Eigen::VectorXd cB = inst.costs(basis);
  const double cb_norm = cB.norm();
  const double cs = cb_norm > 0.0 ? 1.0 / cb_norm : 1.0;
  const Eigen::VectorXd u = lu.solve(inst.A.column_dense(k));
  const double ck = inst.c(static_cast<Eigen::Index>(k)) * cs;
  const double rc = ck - cs * cB.dot(u);
  return rc / std::sqrt(u.squaredNorm() + ck * ck);
}

struct RatioTestResult {
  bool unbounded = false;
  std::size_t row = 0;
  double ratio = std::numeric_limits<double>::infinity();
  Eigen::VectorXd direction;
  Eigen::VectorXd x_B;
};

/// min_h x_h / u_h over rows with u_h > delta ||u||. delta = 0 is the
/// textbook test (with a 1e-12 relative floor against round-off). Ties within
/// 1e-12 relative go to the lowest row.
inline RatioTestResult ratio_test(const LpInstance& inst, const std::vector<std::size_t>& basis,
                                  std::size_t k, double delta = 0.0) {
  require(k < inst.n(), ErrorCode::InvalidArgument, "column index out of range");
  const BasisFactor lu(inst, basis);
  RatioTestResult res;
  res.direction = lu.solve(inst.A.column_dense(k));
  res.x_B = lu.solve(inst.b);
  const double unorm = res.direction.norm();
  const double floor = std::max(delta, 1e-12) * unorm;
  res.unbounded = true;
  for (Eigen::Index j = 0; j < res.direction.size(); ++j) {
    const double uj = res.direction(j);
    if (!(uj > floor)) continue;
    const double r = res.x_B(j) / uj;
    const double tie = 1e-12 * std::max(1.0, std::abs(res.ratio));
    if (res.unbounded || r < res.ratio - tie) {
      res.ratio = r;
      res.row = static_cast<std::size_t>(j);
      res.unbounded = false;
    }
  }
  return res;
}

enum class PivotRule { Dantzig, Bland, RandomEligible };

struct ClassicalPivotReport {
  Eigen::VectorXd reduced_costs;
  std::vector<std::size_t> eligible;
  std::size_t entering = 0;
  Eigen::VectorXd direction;
  double ratio = 0.0;
  std::size_t leaving_row = 0;
  std::size_t leaving_column = 0;
  bool bland = false;
};

enum class ClassicalStatus { Optimal, Unbounded, IterationCap };

struct ClassicalResult {
  ClassicalStatus status = ClassicalStatus::Optimal;
  std::vector<std::size_t> basis;
  Eigen::VectorXd x;
  double objective = 0.0;
  std::size_t pivots = 0;
  std::optional<std::size_t> unbounded_column;
  std::vector<ClassicalPivotReport> reports;
};

struct ClassicalOptions {
  PivotRule rule = PivotRule::Dantzig;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  /// Pivots before switching to Bland's rule; 0 means 50 (m + n).
  std::size_t bland_after = 0;
  /// Hard cap on pivots; 0 means 10 times bland_after.
  std::size_t max_pivots = 0;
};

/// Finds a basis of positive unit columns whose solution is nonnegative.
inline std::vector<std::size_t> slack_basis(const LpInstance& inst) {
  std::vector<std::optional<std::size_t>> pick(inst.m());
  for (std::size_t j = 0; j < inst.n(); ++j) {
    if (inst.A.column_nnz(j) != 1) continue;
    const std::size_t r = inst.A.column_rows(j)[0];
    if (inst.A.column_values(j)[0] > 0.0 && !pick[r]) pick[r] = j;
  }
  std::vector<std::size_t> basis;
  for (std::size_t r = 0; r < inst.m(); ++r) {
    require(pick[r].has_value(), ErrorCode::InfeasibleStart,
            "no unit column for row " + std::to_string(r) + "; supply a start basis");
    require(inst.b(static_cast<Eigen::Index>(r)) >= 0.0, ErrorCode::InfeasibleStart,
            "negative rhs in row " + std::to_string(r) + "; slack start is infeasible");
    basis.push_back(*pick[r]);
  }
  return basis;
}

inline Eigen::VectorXd basic_solution(const LpInstance& inst, const std::vector<std::size_t>& basis) {
  const Eigen::VectorXd xB = BasisFactor(inst, basis).solve(inst.b);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(inst.n()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    x(static_cast<Eigen::Index>(basis[j])) = xB(static_cast<Eigen::Index>(j));
  return x;
}

inline void require_feasible(const LpInstance& inst, const std::vector<std::size_t>& basis) {
  const Eigen::VectorXd xB = BasisFactor(inst, basis).solve(inst.b);
  require(xB.minCoeff() >= -1e-9, ErrorCode::InfeasibleStart, "start basis is not primal feasible");
}

/// Textbook simplex loop. The cap of 50 (m + n) pivots switches to Bland's
/// rule, which cannot cycle.
inline ClassicalResult solve_classical(const LpInstance& inst, std::vector<std::size_t> basis,
                                       const ClassicalOptions& opts = {}) {
  require_feasible(inst, basis);
  const std::size_t bland_after = opts.bland_after ? opts.bland_after : 50 * (inst.m() + inst.n());
  const std::size_t cap = opts.max_pivots ? opts.max_pivots : 10 * bland_after;
  std::mt19937_64 rng(opts.seed);
  ClassicalResult res;
  for (;;) {
    const Eigen::VectorXd rc = reduced_costs(inst, basis);
    std::vector<char> in_basis(inst.n(), 0);
    for (std::size_t j : basis) in_basis[j] = 1;
    ClassicalPivotReport rep;
    rep.reduced_costs = rc;
    for (std::size_t j = 0; j < inst.n(); ++j)
      if (!in_basis[j] && rc(static_cast<Eigen::Index>(j)) < -opts.tolerance) rep.eligible.push_back(j);
    if (rep.eligible.empty()) {
      res.status = ClassicalStatus::Optimal;
      break;
    }
    if (res.pivots >= cap) {
      res.status = ClassicalStatus::IterationCap;
      break;
    }
    rep.bland = opts.rule == PivotRule::Bland || res.pivots >= bland_after;
    if (rep.bland) {
      rep.entering = rep.eligible.front();
    } else if (opts.rule == PivotRule::RandomEligible) {
      std::uniform_int_distribution<std::size_t> pick(0, rep.eligible.size() - 1);
      rep.entering = rep.eligible[pick(rng)];
    } else {
      rep.entering = rep.eligible.front();
      for (std::size_t j : rep.eligible)
        if (rc(static_cast<Eigen::Index>(j)) < rc(static_cast<Eigen::Index>(rep.entering))) rep.entering = j;
    }
    RatioTestResult rt = ratio_test(inst, basis, rep.entering, 0.0);
    rep.direction = rt.direction;
    if (rt.unbounded) {
      res.status = ClassicalStatus::Unbounded;
      res.unbounded_column = rep.entering;
      res.reports.push_back(std::move(rep));
      break;
    }
    if (rep.bland) {
      // Bland: among minimizing rows, leave the smallest column index.
      const double tie = 1e-12 * std::max(1.0, std::abs(rt.ratio));
      const double unorm = rt.direction.norm();
      for (Eigen::Index j = 0; j < rt.direction.size(); ++j) {
        const double uj = rt.direction(j);
        if (!(uj > 1e-12 * unorm)) continue;
        if (std::abs(rt.x_B(j) / uj - rt.ratio) <= tie &&
            basis[static_cast<std::size_t>(j)] < basis[rt.row])
          rt.row = static_cast<std::size_t>(j);
      }
    }
    rep.ratio = rt.ratio;
    rep.leaving_row = rt.row;
    rep.leaving_column = basis[rt.row];
    basis[rt.row] = rep.entering;
    res.reports.push_back(std::move(rep));
    ++res.pivots;
  }
  res.basis = basis;
  res.x = basic_solution(inst, basis);
  res.objective = inst.c.dot(res.x);
  return res;
}

}  // namespace qsimplex
