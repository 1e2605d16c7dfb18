#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/classical.hpp"
#include "qsimplex/lp.hpp"

namespace qsimplex {

/// Normalized view of one basis: scaled A_B, scaled costs and the classical
/// quantities the subroutines are checked against.
struct ScaledBasis {
  const LpInstance* inst = nullptr;
  BasisState state;
  Eigen::MatrixXd AB;
  Eigen::VectorXd c;  // c * cost_scale, all n entries
  double nu = 1.0;    // ||(-c_B, 1)|| after scaling
  std::optional<BasisFactor> lu;

  [[nodiscard]] std::size_t m() const { return inst->m(); }
  [[nodiscard]] std::size_t n() const { return inst->n(); }
  [[nodiscard]] const std::vector<std::size_t>& basis() const { return state.basis; }
  [[nodiscard]] const std::vector<std::size_t>& nonbasic() const { return state.nonbasic; }

  [[nodiscard]] Eigen::VectorXd column(std::size_t k) const {
    return inst->A.column_dense(k) * state.matrix_scale;
  }
  [[nodiscard]] Eigen::VectorXd cost_basic() const {
    Eigen::VectorXd cb(static_cast<Eigen::Index>(m()));
    for (std::size_t j = 0; j < m(); ++j) cb(static_cast<Eigen::Index>(j)) = c(static_cast<Eigen::Index>(state.basis[j]));
    return cb;
  }
  /// u = A_B^-1 A_k (invariant under the matrix scaling).
  [[nodiscard]] Eigen::VectorXd direction(std::size_t k) const { return lu->solve(column(k)); }
  /// x_B in scaled units (A_B scaled, b unscaled).
  [[nodiscard]] Eigen::VectorXd x_basic() const { return lu->solve(inst->b); }

  /// c_k - c_B^T A_B^-1 A_k divided by ||(A_B^-1 A_k, c_k)||, scaled costs.
  [[nodiscard]] double rho(std::size_t k) const {
    const Eigen::VectorXd u = direction(k);
    const double ck = c(static_cast<Eigen::Index>(k));
    return (ck - cost_basic().dot(u)) / std::sqrt(u.squaredNorm() + ck * ck);
  }

  /// (-c_B, 1) / nu: the state U_c prepares.
  [[nodiscard]] Eigen::VectorXd cost_probe() const {
    Eigen::VectorXd p(static_cast<Eigen::Index>(m() + 1));
    p.head(static_cast<Eigen::Index>(m())) = -cost_basic();
    p(static_cast<Eigen::Index>(m())) = 1.0;
    return p / nu;
  }
};

inline ScaledBasis scale_basis(const LpInstance& inst, const std::vector<std::size_t>& basis,
                               double eps_prime = 1e-4) {
  ScaledBasis sb;
  sb.inst = &inst;
  sb.state = normalize(inst, make_basis(inst, basis), eps_prime);
  sb.AB = basis_matrix(inst, sb.state.basis) * sb.state.matrix_scale;
  sb.c = inst.c * sb.state.cost_scale;
  sb.lu.emplace(sb.AB);
  sb.nu = std::sqrt(sb.cost_basic().squaredNorm() + 1.0);
  return sb;
}

}  // namespace qsimplex
