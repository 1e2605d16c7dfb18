#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/boosting.hpp"
#include "qsimplex/context.hpp"
#include "qsimplex/cost_model.hpp"
#include "qsimplex/primitives.hpp"
#include "qsimplex/qlsa.hpp"
#include "qsimplex/scaled_basis.hpp"
#include "qsimplex/sign_estimation.hpp"

namespace qsimplex {

/// Extended system [[A_B, 0], [0, 1]] used for reduced costs.
inline Eigen::MatrixXd extended_basis(const ScaledBasis& sb) {
  const auto m = static_cast<Eigen::Index>(sb.m());
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(m + 1, m + 1);
  E.topLeftCorner(m, m) = sb.AB;
  E(m, m) = 1.0;
  return E;
}

inline QlsaOracle reduced_cost_oracle(const ScaledBasis& sb, double eps, const QlsaErrorSpec& err) {
  return QlsaOracle(extended_basis(sb), sb.state.kappa, sb.state.d, eps / (10.0 * sb.nu), err);
}

struct RedCostUnitary {
  PreparedUnitary U;
  std::size_t target = 0;
  bool success = true;
  /// <(-c_B, 1)/nu | x~>, the amplitude U leaves on the target.
  double amplitude = 0.0;
  /// rho_k / nu from exact arithmetic.
  double amplitude_exact = 0.0;
};

/// U = U_c^dagger P(x~) where x~ approximates the normalized solution of
/// [[A_B, 0], [0, 1]] (x, y) = (A_k, c_k) to precision eps/(10 nu).
inline RedCostUnitary red_cost_unitary(const ScaledBasis& sb, const QlsaOracle& oracle, std::size_t k,
                                       SubroutineContext& ctx) {
  const auto m = static_cast<Eigen::Index>(sb.m());
  Eigen::VectorXd rhs(m + 1);
  rhs.head(m) = sb.column(k);
  rhs(m) = sb.c(static_cast<Eigen::Index>(k));
  const Eigen::VectorXd probe = sb.cost_probe();
  const QlsaOutput sol = qlsa_apply(oracle, rhs, &probe, ctx.rng);

  const std::size_t q = qubits_for(sb.m() + 1);
  const PreparedUnitary px = prepare_sparse_state(sol.state, q);
  const PreparedUnitary uc = prepare_sparse_state(probe, q);
  RedCostUnitary out;
  out.U.circuit = px.circuit;
  out.U.circuit.append(uc.circuit.inverse());
  out.U.gate_cost = px.gate_cost + uc.gate_cost;
  out.U.real_amplitudes = true;
  out.U.per_call = sol.stats;
  out.U.per_call.basic_gates += out.U.gate_cost;
  out.success = sol.success;
  out.amplitude = probe.dot(sol.state);
  out.amplitude_exact = probe.dot(sol.exact);
  return out;
}

inline RedCostUnitary red_cost_unitary(const ScaledBasis& sb, std::size_t k, double eps, SubroutineContext& ctx) {
  return red_cost_unitary(sb, reduced_cost_oracle(sb, eps, ctx.qlsa), k, ctx);
}

/// Boosted CanEnter: each repetition returns 1 iff sign estimation at
/// precision 11 eps/(10 nu) returns 0 and the QLSA flagged success.
inline BoostedDecision can_enter(const ScaledBasis& sb, std::size_t k, double eps, SignVariant variant,
                                 SubroutineContext& ctx) {
  require(variant == SignVariant::NFN || variant == SignVariant::NFP, ErrorCode::InvalidArgument,
          "CanEnter uses the NFN or NFP variant");
  const QlsaOracle oracle = reduced_cost_oracle(sb, eps, ctx.qlsa);
  const double sign_eps = 11.0 * eps / (10.0 * sb.nu);
  return majority_vote(ctx.repetitions, [&] {
    const RedCostUnitary rc = red_cost_unitary(sb, oracle, k, ctx);
    const SignDecision s = sign_est(rc.U, rc.target, sign_eps, variant, ctx);
    return Vote{(s.value == 0 && rc.success) ? 1 : 0, s.accurate && rc.success};
  });
}

/// Number of column blocks for split pricing, or nullopt when the threshold
/// n/m >= 2 kappa d^2 / d_c fails or the block count rounds below 2.
inline std::optional<std::size_t> column_split(double n, double m, double d_c, double d, double kappa) {
  require(n >= 1 && m >= 1 && d_c >= 1 && d >= 1 && kappa >= 1, ErrorCode::InvalidArgument,
          "column_split inputs must be >= 1");
  if (!split_threshold_holds(n, m, d_c, d, kappa)) return std::nullopt;
  const auto h = static_cast<std::size_t>(std::floor(split_ratio(n, m, d_c, d, kappa) + 1e-9));
  if (h < 2) return std::nullopt;
  return h;
}

struct FindColumnOptions {
  SignVariant variant = SignVariant::NFN;
  /// Retry with the NFP variant when the first pass finds nothing.
  bool nfp_fallback = true;
  /// Split the nonbasic set into this many blocks and search them in order.
  std::optional<std::size_t> blocks;
};

struct FindColumnResult {
  std::optional<std::size_t> column;
  /// The returned column's verification was justified and came from the
  /// primary variant, so the pricing guarantee applies.
  bool success = false;
  SignVariant variant = SignVariant::NFN;
  bool used_fallback = false;
  std::vector<std::size_t> domain;
  /// Oracle realization of the primary pass over `domain`.
  std::vector<char> marked;
  std::uint64_t grover_iterations = 0;
};

namespace detail {

struct ColumnSearch {
  std::optional<std::size_t> column;
  bool success = false;
  std::vector<char> marked;
};

inline ColumnSearch search_columns(const ScaledBasis& sb, const std::vector<std::size_t>& domain, double eps,
                                   SignVariant variant, std::optional<std::size_t> blocks, SubroutineContext& ctx,
                                   std::uint64_t& iterations) {
  ColumnSearch out;
  out.marked.resize(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) out.marked[i] = can_enter(sb, domain[i], eps, variant, ctx).value;
  const std::size_t nb = blocks.value_or(1);
  const std::size_t size = (domain.size() + nb - 1) / nb;
  for (std::size_t start = 0; start < domain.size() && !out.column; start += size) {
    const std::size_t end = std::min(domain.size(), start + size);
    std::vector<char> block(out.marked.begin() + static_cast<std::ptrdiff_t>(start),
                            out.marked.begin() + static_cast<std::ptrdiff_t>(end));
    bool verified_success = false;
    const SearchResult s = qsearch(
        block,
        [&](std::size_t i) {
          const BoostedDecision d = can_enter(sb, domain[start + i], eps, variant, ctx);
          verified_success = d.success;
          return d.value == 1;
        },
        ctx.mode, ctx.rng);
    ctx.stats.grover_iterations += s.iterations;
    iterations += s.iterations;
    if (s.index) {
      out.column = domain[start + *s.index];
      out.success = verified_success;
    }
  }
  return out;
}

}  // namespace detail

/// Quantum search over N for a column CanEnter accepts.
inline FindColumnResult find_column(const ScaledBasis& sb, double eps, SubroutineContext& ctx,
                                    const FindColumnOptions& opts = {}) {
  FindColumnResult res;
  res.domain = sb.nonbasic();
  res.variant = opts.variant;
  if (res.domain.empty()) return res;
  detail::ColumnSearch first =
      detail::search_columns(sb, res.domain, eps, opts.variant, opts.blocks, ctx, res.grover_iterations);
  res.marked = first.marked;
  if (first.column) {
    res.column = first.column;
    res.success = first.success;
    return res;
  }
  if (opts.nfp_fallback && opts.variant == SignVariant::NFN) {
    detail::ColumnSearch second =
        detail::search_columns(sb, res.domain, eps, SignVariant::NFP, opts.blocks, ctx, res.grover_iterations);
    if (second.column) {
      res.column = second.column;
      res.variant = SignVariant::NFP;
      res.used_fallback = true;
      res.success = false;
    }
  }
  return res;
}

struct DetectionResult {
  int value = 0;
  /// For 1: every item's decision was justified and none was marked.
  /// For 0: the witness's verification was justified.
  bool success = false;
  std::optional<std::size_t> witness;
  std::vector<char> marked;
};

/// Realizes a boosted oracle over `count` items and runs fixed-budget Grover
/// detection; returns 1 when nothing is found.
inline DetectionResult detect_none(std::size_t count, const std::function<BoostedDecision(std::size_t)>& oracle,
                                   SubroutineContext& ctx) {
  DetectionResult res;
  res.marked.resize(count);
  bool all_justified = true;
  for (std::size_t i = 0; i < count; ++i) {
    const BoostedDecision d = oracle(i);
    res.marked[i] = static_cast<char>(d.value);
    all_justified = all_justified && d.success;
  }
  bool witness_success = false;
  const SearchResult s = grover_detect(
      res.marked,
      [&](std::size_t i) {
        const BoostedDecision d = oracle(i);
        witness_success = d.success;
        return d.value == 1;
      },
      ctx.mode, ctx.rng);
  ctx.stats.grover_iterations += s.iterations;
  if (s.index) {
    res.value = 0;
    res.witness = *s.index;
    res.success = witness_success;
  } else {
    res.value = 1;
    res.success = all_justified &&
                  std::none_of(res.marked.begin(), res.marked.end(), [](char c) { return c != 0; });
  }
  return res;
}

/// Optimality test: Grover detection over N with the NFP CanEnter oracle.
inline DetectionResult is_optimal(const ScaledBasis& sb, double eps, SubroutineContext& ctx) {
  const auto& N = sb.nonbasic();
  DetectionResult res = detect_none(
      N.size(), [&](std::size_t i) { return can_enter(sb, N[i], eps, SignVariant::NFP, ctx); }, ctx);
  if (res.witness) res.witness = N[*res.witness];
  if (N.empty()) res.success = true;
  return res;
}

}  // namespace qsimplex
