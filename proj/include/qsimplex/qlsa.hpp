#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/cost_model.hpp"
#include "qsimplex/error.hpp"
#include "qsimplex/lp.hpp"
#include "qsimplex/params.hpp"
#include "qsimplex/statevector.hpp"

namespace qsimplex {

/// Ideal linear-system oracle: the solution is computed classically,
/// perturbed by the configured error of norm exactly `precision`, and costs
/// are charged with the unit-constant query formulas.
class QlsaOracle {
 public:
  /// `matrix` must already be scaled so its singular values lie in [1/kappa, 1].
  QlsaOracle(Eigen::MatrixXd matrix, double kappa, std::size_t d, double precision, QlsaErrorSpec error = {})
      : matrix_(std::move(matrix)), lu_(matrix_), kappa_(kappa), d_(d), precision_(precision), error_(error) {
    require(matrix_.rows() == matrix_.cols() && matrix_.rows() > 0, ErrorCode::InvalidArgument,
            "QLSA system must be square");
    require(precision > 0.0 && precision < 2.0, ErrorCode::InvalidArgument, "QLSA precision must lie in (0, 2)");
    require(error.success_probability > 0.0 && error.success_probability <= 1.0, ErrorCode::InvalidArgument,
            "QLSA success probability must lie in (0, 1]");
    const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(matrix_).singularValues();
    const double tol = 1e-9;
    require(s(0) <= 1.0 + tol && s(s.size() - 1) >= 1.0 / kappa - tol, ErrorCode::SpectrumOutOfRange,
            "singular values " + std::to_string(s(s.size() - 1)) + ".." + std::to_string(s(0)) +
                " outside [1/kappa, 1] for kappa = " + std::to_string(kappa));
    cost_ = qlsa_cost(static_cast<double>(std::max<std::size_t>(d_, 1)), std::max(kappa_, 1.0), precision_,
                      static_cast<double>(matrix_.rows()));
  }

  [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  [[nodiscard]] double precision() const noexcept { return precision_; }
  [[nodiscard]] double kappa() const noexcept { return kappa_; }
  [[nodiscard]] const QlsaCost& cost() const noexcept { return cost_; }
  [[nodiscard]] const QlsaErrorSpec& error_spec() const noexcept { return error_; }

  [[nodiscard]] QueryStats per_call_stats() const {
    QueryStats s;
    s.qlsa_invocations = 1;
    s.pab_queries = cost_.pab_queries;
    s.pb_queries = cost_.pb_queries;
    s.basic_gates = cost_.gates;
    return s;
  }

  [[nodiscard]] Eigen::VectorXd exact_solution(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd x = lu_.solve(rhs);
    const double n = x.norm();
    require(n > 0.0, ErrorCode::ZeroVector, "right-hand side is zero");
    return x / n;
  }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double kappa_;
  std::size_t d_;
  double precision_;
  QlsaErrorSpec error_;
  QlsaCost cost_;
};

struct QlsaOutput {
  Eigen::VectorXd exact;
  Eigen::VectorXd state;
  bool success = true;
  QueryStats stats;
};

/// Unit vector orthogonal to x, chosen from `probe` when possible; falls back
/// to the basis vector where |x_j| is smallest. Returns nullopt in dimension 1.
inline std::optional<Eigen::VectorXd> orthogonal_direction(const Eigen::VectorXd& x, const Eigen::VectorXd* probe) {
  if (x.size() < 2) return std::nullopt;
  if (probe) {
    Eigen::VectorXd w = *probe - probe->dot(x) * x;
    if (w.norm() > 1e-9 * std::max(1.0, probe->norm())) return Eigen::VectorXd(w.normalized());
  }
  Eigen::Index j = 0;
  x.cwiseAbs().minCoeff(&j);
  Eigen::VectorXd w = Eigen::VectorXd::Unit(x.size(), j);
  w -= w.dot(x) * x;
  return Eigen::VectorXd(w.normalized());
}

/// Solves for |matrix^-1 rhs> and injects the configured error.
/// Worst mode rotates by exactly `precision` toward the direction that moves
/// <probe, x~> toward zero (downward when it is already zero); random mode
/// rotates by the same angle toward a uniformly random orthogonal direction.
template <class Rng>
QlsaOutput qlsa_apply(const QlsaOracle& oracle, const Eigen::VectorXd& rhs, const Eigen::VectorXd* probe, Rng& rng) {
  QlsaOutput out;
  out.exact = oracle.exact_solution(rhs);
  out.state = out.exact;
  out.stats = oracle.per_call_stats();
  const double phi = 2.0 * std::asin(oracle.precision() / 2.0);
  std::optional<Eigen::VectorXd> w;
  switch (oracle.error_spec().mode) {
    case QlsaErrorMode::Zero: break;
    case QlsaErrorMode::Worst: {
      w = orthogonal_direction(out.exact, probe);
      if (w && probe) {
        const double along = probe->dot(out.exact);
        const double sign = along >= 0.0 ? -1.0 : 1.0;
        *w *= (probe->dot(*w) >= 0.0 ? sign : -sign);
      }
      break;
    }
    case QlsaErrorMode::Random: {
      std::normal_distribution<double> g(0.0, 1.0);
      Eigen::VectorXd r(out.exact.size());
      for (Eigen::Index i = 0; i < r.size(); ++i) r(i) = g(rng);
      w = orthogonal_direction(out.exact, &r);
      break;
    }
  }
  if (w) out.state = std::cos(phi) * out.exact + std::sin(phi) * *w;
  if (oracle.error_spec().success_probability < 1.0) {
    std::bernoulli_distribution ok(oracle.error_spec().success_probability);
    out.success = ok(rng);
  }
  return out;
}

/// Column oracles over a set of nonbasic columns. Zero columns are excluded
/// and listed separately.
struct ColumnOracle {
  std::vector<std::size_t> columns;
  std::vector<std::size_t> zero_columns;
  std::size_t index_qubits = 0;
  std::size_t row_qubits = 0;
  double frobenius = 0.0;
  /// |k>|0> -> |k>|A_k/||A_k||>, one controlled preparation per column.
  PreparedUnitary controlled_by_index;
  /// |0>|0> -> sum_k (||A_k|| / ||A_N||_F) |k>|A_k/||A_k||>.
  PreparedUnitary frobenius_superposition;
};

inline ColumnOracle column_superposition_oracle(const LpInstance& inst, const std::vector<std::size_t>& cols) {
  ColumnOracle out;
  for (std::size_t k : cols) {
    require(k < inst.n(), ErrorCode::InvalidArgument, "column index out of range");
    (inst.A.column_nnz(k) == 0 ? out.zero_columns : out.columns).push_back(k);
  }
  require(!out.columns.empty(), ErrorCode::ZeroColumn, "no nonzero columns to load");
  out.index_qubits = qubits_for(out.columns.size());
  out.row_qubits = qubits_for(inst.m());
  const std::size_t q = out.index_qubits + out.row_qubits;

  out.controlled_by_index.circuit = Circuit(q);
  Eigen::VectorXd joint = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(std::size_t{1} << q));
  for (std::size_t pos = 0; pos < out.columns.size(); ++pos) {
    const Eigen::VectorXd col = inst.A.column_dense(out.columns[pos]);
    std::vector<Control> ctl;
    for (std::size_t b = 0; b < out.index_qubits; ++b)
      ctl.push_back({b, static_cast<bool>((pos >> (out.index_qubits - 1 - b)) & 1U)});
    const PreparedUnitary prep = prepare_sparse_state(col, out.row_qubits);
    out.controlled_by_index.circuit.append_controlled(prep.circuit, out.index_qubits, ctl);
    for (Eigen::Index i = 0; i < col.size(); ++i)
      joint(static_cast<Eigen::Index>((pos << out.row_qubits) + static_cast<std::size_t>(i))) = col(i);
  }
  out.controlled_by_index.gate_cost = out.controlled_by_index.circuit.size();
  out.controlled_by_index.per_call.basic_gates = out.controlled_by_index.gate_cost;
  out.frobenius = joint.norm();
  out.frobenius_superposition = prepare_sparse_state(joint, q);
  return out;
}

}  // namespace qsimplex
