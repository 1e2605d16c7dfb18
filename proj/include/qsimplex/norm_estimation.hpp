#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/context.hpp"
#include "qsimplex/cost_model.hpp"
#include "qsimplex/primitives.hpp"
#include "qsimplex/scaled_basis.hpp"
#include "qsimplex/statevector.hpp"

namespace qsimplex {

struct NormEstimate {
  double estimate = 0.0;
  double exact = 0.0;
  double alpha = 0.0;
  /// Squared flag amplitude ||A~^-1 A_N||_F^2 / (alpha^2 ||A_N||_F^2).
  double flag_probability = 0.0;
  /// The median AE sample was accurate.
  bool success = false;
  std::vector<std::size_t> zero_columns;
};

/// Estimates ||A_B^-1 A_S||_F^2 for the column set S. The index register
/// holds sum_k (||A_k|| / ||A_S||_F) |k>|A_k/||A_k||>; a controlled rotation
/// per column puts ||A~^-1 A_k|| / (alpha ||A_k||) on the flag qubit, and AE
/// at precision eps/(4 pi alpha^2) estimates the flag probability. The
/// operator error eta = eps/(2n) perturbs A^-1 by -eta I (worst mode picks
/// the sign that shrinks the norm, random mode a random sign).
inline NormEstimate norm_estimate(const ScaledBasis& sb, const std::vector<std::size_t>& columns, double eps,
                                  SubroutineContext& ctx, double alpha = 0.0) {
  require(eps > 0.0 && eps <= 0.5, ErrorCode::InvalidArgument, "epsilon must lie in (0, 1/2]");
  NormEstimate out;
  std::vector<std::size_t> cols;
  for (std::size_t k : columns)
    (sb.inst->A.column_nnz(k) == 0 ? out.zero_columns : cols).push_back(k);
  require(!cols.empty(), ErrorCode::ZeroColumn, "no nonzero columns to estimate");

  const auto m = static_cast<Eigen::Index>(sb.m());
  Eigen::MatrixXd AN(m, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) AN.col(static_cast<Eigen::Index>(j)) = sb.column(cols[j]);
  const Eigen::MatrixXd inv = sb.lu->inverse();
  out.exact = (inv * AN).squaredNorm();

  const double eta = eps / (2.0 * static_cast<double>(sb.n()));
  double sign = 0.0;
  switch (ctx.qlsa.mode) {
    case QlsaErrorMode::Zero: break;
    case QlsaErrorMode::Worst:
      sign = ((inv - eta * Eigen::MatrixXd::Identity(m, m)) * AN).squaredNorm() <=
                     ((inv + eta * Eigen::MatrixXd::Identity(m, m)) * AN).squaredNorm()
                 ? 1.0
                 : -1.0;
      break;
    case QlsaErrorMode::Random: {
      std::bernoulli_distribution coin(0.5);
      sign = coin(ctx.rng) ? 1.0 : -1.0;
      break;
    }
  }
  const Eigen::MatrixXd inv_tilde = inv - sign * eta * Eigen::MatrixXd::Identity(m, m);
  const double spec = Eigen::JacobiSVD<Eigen::MatrixXd>(inv_tilde).singularValues()(0);
  out.alpha = std::max({alpha > 0.0 ? alpha : sb.state.kappa, spec, 1.0});

  // Register layout: index (MSB) | rows | flag (LSB).
  const std::size_t iq = qubits_for(cols.size());
  const std::size_t rq = qubits_for(sb.m());
  const std::size_t q = iq + rq + 1;
  const double frob = AN.norm();
  Eigen::VectorXd amp = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(std::size_t{1} << q));
  double good = 0.0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Eigen::VectorXd ak = AN.col(static_cast<Eigen::Index>(j));
    const double w = ak.norm() / frob;
    const Eigen::VectorXd sol = inv_tilde * ak;
    const double a = std::min(1.0, sol.norm() / (out.alpha * ak.norm()));
    const Eigen::VectorXd dir1 = sol.norm() > 0.0 ? Eigen::VectorXd(sol.normalized()) : Eigen::VectorXd(ak.normalized());
    const Eigen::VectorXd dir0 = ak.normalized();
    for (Eigen::Index i = 0; i < m; ++i) {
      const std::size_t base = ((j << rq) + static_cast<std::size_t>(i)) << 1;
      amp(static_cast<Eigen::Index>(base)) = w * std::sqrt(1.0 - a * a) * dir0(i);
      amp(static_cast<Eigen::Index>(base | 1U)) = w * a * dir1(i);
    }
    good += w * w * a * a;
  }
  out.flag_probability = good;

  const double precision = eps / (4.0 * std::numbers::pi * out.alpha * out.alpha);
  const std::size_t acc = ae_accuracy_bits(precision);
  const std::size_t bits = acc + 2;
  const std::uint64_t M = std::uint64_t{1} << bits;
  const QlsaCost qc = qlsa_cost(static_cast<double>(std::max<std::size_t>(sb.state.d, 1)), sb.state.kappa,
                                std::max(eta, 1e-12), static_cast<double>(sb.m()));
  QueryStats per_call;
  per_call.qlsa_invocations = 1;
  per_call.pab_queries = qc.pab_queries;
  per_call.pb_queries = qc.pb_queries;
  per_call.basic_gates = qc.gates;

  std::vector<std::pair<double, bool>> samples;
  std::shared_ptr<const AeDistribution> dist;
  const bool circuit = ctx.mode == ExecutionMode::Sampling && ae_circuit_feasible(bits, q);
  if (circuit) {
    const PreparedUnitary prep = prepare_sparse_state(amp, q);
    std::vector<char> flag(std::size_t{1} << q, 0);
    for (std::size_t i = 1; i < flag.size(); i += 2) flag[i] = 1;
    dist = std::make_shared<const AeDistribution>(ae_distribution_circuit(prep.circuit, flag, bits));
  } else {
    dist = ctx.ae_cache.get(std::sqrt(good), bits);
  }
  for (std::size_t r = 0; r < ctx.repetitions; ++r) {
    const AeOutcome o = ae_sample(*dist, acc, ctx.rng);
    samples.emplace_back(o.folded, o.accurate);
    ctx.stats.ae_repetitions += M - 1;
    ctx.stats.u_calls += 1 + 2 * (M - 1);
    ctx.stats.add_scaled(per_call, 1 + 2 * (M - 1));
  }
  std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2), samples.end());
  const auto& med = samples[samples.size() / 2];
  const double p_est = std::pow(std::sin(std::numbers::pi * med.first), 2);
  out.estimate = p_est * out.alpha * out.alpha * frob * frob;
  out.success = med.second;
  return out;
}

/// ||A_B^-1 A_N||_F^2 over all nonbasic columns.
inline NormEstimate norm_estimate(const ScaledBasis& sb, double eps, SubroutineContext& ctx, double alpha = 0.0) {
  return norm_estimate(sb, sb.nonbasic(), eps, ctx, alpha);
}

/// ||A_B^-1 A_k||^2 for a single column.
inline NormEstimate norm_estimate_column(const ScaledBasis& sb, std::size_t k, double eps, SubroutineContext& ctx,
                                         double alpha = 0.0) {
  return norm_estimate(sb, std::vector<std::size_t>{k}, eps, ctx, alpha);
}

}  // namespace qsimplex
