#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/error.hpp"
#include "qsimplex/sparse.hpp"

namespace qsimplex {

/// Smallest power of two that is >= value (value > 0).
inline double round_up_pow2(double value) {
  if (value <= 0.0) return 1.0;
  return std::exp2(std::ceil(std::log2(value)));
}

/// Standard-form LP: minimize c^T x subject to A x = b, x >= 0.
struct LpInstance {
  SparseMatrix A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  std::size_t d_c = 0;
  double L = 1.0;

  [[nodiscard]] std::size_t m() const { return A.rows(); }
  [[nodiscard]] std::size_t n() const { return A.cols(); }

  static LpInstance make(SparseMatrix A, Eigen::VectorXd b, Eigen::VectorXd c) {
    require(A.rows() > 0 && A.cols() > 0, ErrorCode::InvalidArgument, "empty constraint matrix");
    require(static_cast<std::size_t>(b.size()) == A.rows(), ErrorCode::InvalidArgument,
            "rhs length does not match row count");
    require(static_cast<std::size_t>(c.size()) == A.cols(), ErrorCode::InvalidArgument,
            "cost length does not match column count");
    require(b.allFinite() && c.allFinite(), ErrorCode::InvalidArgument, "non-finite rhs or cost");
    LpInstance inst;
    inst.d_c = A.max_column_nnz();
    inst.L = round_up_pow2(A.max_abs());
    inst.A = std::move(A);
    inst.b = std::move(b);
    inst.c = std::move(c);
    return inst;
  }

  static LpInstance from_dense(const Eigen::MatrixXd& A, Eigen::VectorXd b, Eigen::VectorXd c) {
    return make(SparseMatrix::from_dense(A), std::move(b), std::move(c));
  }

  [[nodiscard]] Eigen::MatrixXd columns_dense(const std::vector<std::size_t>& cols) const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      out.col(static_cast<Eigen::Index>(j)) = A.column_dense(cols[j]);
    return out;
  }

  [[nodiscard]] Eigen::VectorXd costs(const std::vector<std::size_t>& cols) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(j)) = c(static_cast<Eigen::Index>(cols[j]));
    return out;
  }
};

/// Basis bookkeeping. Scale factors are 1 until normalize() fills them in.
struct BasisState {
  std::vector<std::size_t> basis;
  std::vector<std::size_t> nonbasic;
  double cost_scale = 1.0;
  double matrix_scale = 1.0;
  double kappa = 1.0;
  std::size_t d_c = 0;
  std::size_t d_r = 0;
  std::size_t d = 0;
  bool cost_degenerate = false;
  double sigma_max_estimate = 0.0;
  std::size_t power_iterations = 0;
  bool power_converged = true;
};

inline Eigen::MatrixXd basis_matrix(const LpInstance& inst, const std::vector<std::size_t>& basis) {
  return inst.columns_dense(basis);
}

/// Validates the index set, fills the nonbasic complement and checks
/// linear independence. Statistics are left for sparsity_stats/normalize.
inline BasisState make_basis(const LpInstance& inst, std::vector<std::size_t> basis) {
  require(basis.size() == inst.m(), ErrorCode::InvalidArgument,
          "basis must have exactly m = " + std::to_string(inst.m()) + " columns");
  std::set<std::size_t> seen;
  for (std::size_t j : basis) {
    require(j < inst.n(), ErrorCode::InvalidArgument, "basis index " + std::to_string(j) + " out of range");
    require(seen.insert(j).second, ErrorCode::InvalidArgument, "duplicate basis index " + std::to_string(j));
  }
  BasisState state;
  state.basis = std::move(basis);
  for (std::size_t j = 0; j < inst.n(); ++j)
    if (!seen.count(j)) state.nonbasic.push_back(j);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix(inst, state.basis));
  require(lu.isInvertible(), ErrorCode::BasisSingular, "basis columns are linearly dependent");
  state.d_c = inst.d_c;
  return state;
}

struct SigmaEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Power iteration on A^T A. The Rayleigh quotient never exceeds the top
/// eigenvalue, so the returned value is a lower bound on sigma_max; the
/// stopping tolerance is far below eps_prime so the (1 - eps_prime) floor holds.
inline SigmaEstimate estimate_sigma_max(const SparseMatrix& A, double eps_prime,
                                        std::size_t max_iterations = 20000) {
  require(A.nnz() > 0, ErrorCode::ZeroVector, "matrix has no nonzero entries");
  require(eps_prime > 0.0 && eps_prime < 0.5, ErrorCode::InvalidArgument, "eps' must lie in (0, 1/2)");
  const auto n = static_cast<Eigen::Index>(A.cols());
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.1 * static_cast<double>(i % 7) / 7.0;
  v.normalize();
  const double tol = std::min(1e-15, eps_prime * 1e-6);
  SigmaEstimate est;
  double lambda = 0.0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXd w = A.multiply_transpose(A.multiply(v));
    const double next = v.dot(w);
    const double norm = w.norm();
    est.iterations = it;
    if (norm == 0.0) {
      // Start vector landed in the null space; perturb deterministically.
      v = Eigen::VectorXd::Unit(n, static_cast<Eigen::Index>(it % static_cast<std::size_t>(n)));
      continue;
    }
    v = w / norm;
    if (it > 1 && std::abs(next - lambda) <= tol * std::max(next, 1e-300)) {
      lambda = std::max(lambda, next);
      est.converged = true;
      break;
    }
    lambda = std::max(lambda, next);
  }
  est.value = std::sqrt(lambda);
  return est;
}

struct SparsityStats {
  std::size_t d_c = 0;
  std::size_t d_r = 0;
  std::size_t d = 0;
  double kappa = 1.0;
};

inline double condition_number(const Eigen::MatrixXd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& s = svd.singularValues();
  require(s.size() > 0 && s(s.size() - 1) > 0.0, ErrorCode::BasisSingular, "matrix is singular");
  return s(0) / s(s.size() - 1);
}

inline SparsityStats sparsity_stats(const LpInstance& inst, const BasisState& basis) {
  SparsityStats st;
  st.d_c = inst.d_c;
  const SparseMatrix AB = inst.A.select_columns(basis.basis);
  const auto rows = AB.row_nnz();
  st.d_r = rows.empty() ? 0 : *std::max_element(rows.begin(), rows.end());
  st.d = std::max(st.d_c, st.d_r);
  st.kappa = condition_number(AB.to_dense());
  return st;
}

/// Scales c so that ||c_B|| = 1 and A so that ||A_B|| = 1 - eps_prime (up to
/// the power-method estimate). kappa is inflated by 1/(1 - eps_prime) so the
/// scaled spectrum provably lies in [1/kappa, 1].
inline BasisState normalize(const LpInstance& inst, const BasisState& basis, double eps_prime = 1e-4) {
  require(eps_prime > 0.0 && eps_prime < 0.5, ErrorCode::InvalidArgument, "eps' must lie in (0, 1/2)");
  BasisState out = make_basis(inst, basis.basis);
  const SparsityStats st = sparsity_stats(inst, out);
  out.d_c = st.d_c;
  out.d_r = st.d_r;
  out.d = st.d;

  const double cb_norm = inst.costs(out.basis).norm();
  out.cost_degenerate = cb_norm == 0.0;
  out.cost_scale = out.cost_degenerate ? 1.0 : 1.0 / cb_norm;

  const SigmaEstimate sigma = estimate_sigma_max(inst.A.select_columns(out.basis), eps_prime);
  out.sigma_max_estimate = sigma.value;
  out.power_iterations = sigma.iterations;
  out.power_converged = sigma.converged;
  out.matrix_scale = (1.0 - eps_prime) / sigma.value;
  out.kappa = st.kappa / (1.0 - eps_prime);
  return out;
}

/// Returns a copy of the instance with A and c multiplied by the basis scale factors.
inline LpInstance apply_scaling(const LpInstance& inst, const BasisState& basis) {
  Eigen::MatrixXd A = inst.A.to_dense() * basis.matrix_scale;
  return LpInstance::from_dense(A, inst.b, inst.c * basis.cost_scale);
}

/// [[0, M], [M^T, 0]].
inline Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& M) {
  const Eigen::Index r = M.rows();
  const Eigen::Index c = M.cols();
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(r + c, r + c);
  S.topRightCorner(r, c) = M;
  S.bottomLeftCorner(c, r) = M.transpose();
  return S;
}

}  // namespace qsimplex
