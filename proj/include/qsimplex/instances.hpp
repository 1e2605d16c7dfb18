#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/classical.hpp"
#include "qsimplex/lp.hpp"

namespace qsimplex {

/// LP plus the feasible start basis it was generated around.
struct GeneratedLp {
  LpInstance inst;
  std::vector<std::size_t> basis;
};

namespace detail {

template <class Rng>
Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = g(rng);
  return M;
}

template <class Rng>
Eigen::VectorXd uniform(Eigen::Index size, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = u(rng);
  return v;
}

template <class Rng>
std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return all;
}

}  // namespace detail

/// Identity plus a Gaussian perturbation, resampled until kappa <= kappa_max.
template <class Rng>
Eigen::MatrixXd random_basis_matrix(std::size_t m, Rng& rng, double kappa_max = 10.0) {
  const auto mm = static_cast<Eigen::Index>(m);
  for (;;) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(mm, mm) + 0.35 * detail::gaussian(mm, mm, rng);
    if (condition_number(M) <= kappa_max) return M;
  }
}

/// Random LP with a non-slack basis B (m random columns), x_B > 0, c_B != 0,
/// and at least one nonbasic column whose scaled reduced cost is below
/// -min_gap.
template <class Rng>
GeneratedLp random_pricing_lp(std::size_t m, std::size_t n, double min_gap, Rng& rng) {
  const auto mm = static_cast<Eigen::Index>(m);
  for (;;) {
    const std::vector<std::size_t> basis = detail::random_subset(n, m, rng);
    const Eigen::MatrixXd AB = random_basis_matrix(m, rng);
    Eigen::MatrixXd A = detail::gaussian(mm, static_cast<Eigen::Index>(n), rng);
    for (std::size_t j = 0; j < m; ++j) A.col(static_cast<Eigen::Index>(basis[j])) = AB.col(static_cast<Eigen::Index>(j));
    const Eigen::VectorXd x = detail::uniform(mm, 0.5, 1.5, rng);
    Eigen::VectorXd c = detail::gaussian(static_cast<Eigen::Index>(n), 1, rng).col(0);
    GeneratedLp g{LpInstance::from_dense(A, AB * x, c), basis};
    const BasisState st = make_basis(g.inst, basis);
    if (g.inst.costs(basis).norm() < 1e-3) continue;
    double best = 0.0;
    for (std::size_t k : st.nonbasic) best = std::min(best, scaled_reduced_cost(g.inst, basis, k));
    if (best < -min_gap) return g;
  }
}

/// Kind of entering direction u = A_B^-1 A_k for ratio-test instances.
enum class DirectionKind {
  /// max_h u_h >= min_positive ||u||: classically bounded.
  Bounded,
  /// every u_h <= -max_negative ||u||: classically unbounded.
  Unbounded,
};

/// Two-block LP [A_B | A_k] with basis {0..m-1}, entering column m, x_B > 0
/// and a prescribed direction shape.
template <class Rng>
GeneratedLp random_direction_lp(std::size_t m, DirectionKind kind, double margin, Rng& rng) {
  const auto mm = static_cast<Eigen::Index>(m);
  for (;;) {
    const Eigen::MatrixXd AB = random_basis_matrix(m, rng);
    Eigen::VectorXd u;
    if (kind == DirectionKind::Bounded) {
      u = detail::gaussian(mm, 1, rng).col(0);
      if (u.maxCoeff() < margin * u.norm()) continue;
    } else {
      u = -detail::uniform(mm, 0.2, 1.0, rng);
      if (u.maxCoeff() > -margin * u.norm()) continue;
    }
    const Eigen::VectorXd x = detail::uniform(mm, 0.2, 1.5, rng);
    Eigen::MatrixXd A(mm, mm + 1);
    A.leftCols(mm) = AB;
    A.col(mm) = AB * u;
    Eigen::VectorXd c = detail::gaussian(mm + 1, 1, rng).col(0);
    std::vector<std::size_t> basis(m);
    std::iota(basis.begin(), basis.end(), std::size_t{0});
    return {LpInstance::from_dense(A, AB * x, c), basis};
  }
}

/// Every basis of A whose solution is nonnegative has all basic values above
/// `tol` (checked by enumeration; intended for n <= ~12).
inline bool nondegenerate(const LpInstance& inst, double tol = 1e-3) {
  const std::size_t m = inst.m();
  const std::size_t n = inst.n();
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), 1);
  const Eigen::MatrixXd A = inst.A.to_dense();
  do {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (pick[j]) cols.push_back(j);
    Eigen::MatrixXd B(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) B.col(static_cast<Eigen::Index>(j)) = A.col(static_cast<Eigen::Index>(cols[j]));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd x = lu.solve(inst.b);
    if (x.minCoeff() >= -tol && x.minCoeff() <= tol) return false;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return true;
}

/// Bounded LP in slack form: [P | I] x = b with P > 0, b > 0, negative costs
/// on the structural columns and zero cost on the slacks. Resampled until
/// every feasible basis is nondegenerate.
template <class Rng>
GeneratedLp random_bounded_lp(std::size_t m, std::size_t structural, Rng& rng) {
  const auto mm = static_cast<Eigen::Index>(m);
  const auto ns = static_cast<Eigen::Index>(structural);
  for (;;) {
    Eigen::MatrixXd A(mm, ns + mm);
    A.leftCols(ns) = detail::uniform(mm * ns, 0.1, 1.0, rng).reshaped(mm, ns);
    A.rightCols(mm) = Eigen::MatrixXd::Identity(mm, mm);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(ns + mm);
    c.head(ns) = -detail::uniform(ns, 0.2, 1.0, rng);
    GeneratedLp g{LpInstance::from_dense(A, detail::uniform(mm, 1.0, 2.0, rng), c), {}};
    if (!nondegenerate(g.inst)) continue;
    g.basis = slack_basis(g.inst);
    return g;
  }
}

}  // namespace qsimplex
