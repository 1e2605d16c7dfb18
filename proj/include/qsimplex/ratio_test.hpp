#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/boosting.hpp"
#include "qsimplex/context.hpp"
#include "qsimplex/pricing.hpp"
#include "qsimplex/primitives.hpp"
#include "qsimplex/qlsa.hpp"
#include "qsimplex/scaled_basis.hpp"
#include "qsimplex/sign_estimation.hpp"

namespace qsimplex {

namespace detail {

/// Boosted positive-sign test on component h of the QLSA output for rhs.
inline BoostedDecision positive_component(const QlsaOracle& oracle, const Eigen::VectorXd& rhs, std::size_t h,
                                          double eps, SignVariant variant, SubroutineContext& ctx) {
  const auto dim = rhs.size();
  const std::size_t q = qubits_for(static_cast<std::size_t>(dim));
  const Eigen::VectorXd probe = Eigen::VectorXd::Unit(dim, static_cast<Eigen::Index>(h));
  return majority_vote(ctx.repetitions, [&] {
    const QlsaOutput sol = qlsa_apply(oracle, rhs, &probe, ctx.rng);
    PreparedUnitary U = prepare_sparse_state(sol.state, q);
    U.per_call += sol.stats;
    const SignDecision s = sign_est(U, h, eps, variant, ctx);
    return Vote{(s.value == 1 && sol.success) ? 1 : 0, s.accurate && sol.success};
  });
}

struct MagnitudeEstimate {
  double value = 0.0;
  bool accurate = false;
};

/// Median of R amplitude estimates of |x~_h|, each from a fresh QLSA output.
inline MagnitudeEstimate component_magnitude(const QlsaOracle& oracle, const Eigen::VectorXd& rhs, std::size_t h,
                                             double precision, SubroutineContext& ctx) {
  const auto dim = rhs.size();
  const std::size_t q = qubits_for(static_cast<std::size_t>(dim));
  const std::size_t acc = ae_accuracy_bits(precision);
  const std::size_t bits = acc + 2;
  const Eigen::VectorXd probe = Eigen::VectorXd::Unit(dim, static_cast<Eigen::Index>(h));
  std::vector<std::pair<double, bool>> samples;
  for (std::size_t r = 0; r < ctx.repetitions; ++r) {
    const QlsaOutput sol = qlsa_apply(oracle, rhs, &probe, ctx.rng);
    AeOutcome o;
    if (ctx.mode == ExecutionMode::Sampling && ae_circuit_feasible(bits, q)) {
      const PreparedUnitary U = prepare_sparse_state(sol.state, q);
      std::vector<char> good(std::size_t{1} << q, 0);
      good[h] = 1;
      o = ae_sample(ae_distribution_circuit(U.circuit, good, bits), acc, ctx.rng);
    } else {
      o = ae_sample(*ctx.ae_cache.get(sol.state(static_cast<Eigen::Index>(h)), bits), acc, ctx.rng);
    }
    const std::uint64_t M = std::uint64_t{1} << bits;
    ctx.stats.ae_repetitions += M - 1;
    ctx.stats.u_calls += 1 + 2 * (M - 1);
    ctx.stats.add_scaled(sol.stats, 1 + 2 * (M - 1));
    samples.emplace_back(o.folded, o.accurate && sol.success);
  }
  std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2), samples.end());
  const auto& med = samples[samples.size() / 2];
  return {std::sin(std::numbers::pi * med.first), med.second};
}

}  // namespace detail

/// Unboundedness test for entering column k: returns 1 when Grover detection
/// over the rows finds no h whose NFN+ test (precision 9 delta/10 on a QLSA
/// output of precision delta/10) reports a positive component.
inline DetectionResult is_unbounded(const ScaledBasis& sb, std::size_t k, double delta, SubroutineContext& ctx) {
  const QlsaOracle oracle(sb.AB, sb.state.kappa, sb.state.d, delta / 10.0, ctx.qlsa);
  const Eigen::VectorXd rhs = sb.column(k);
  return detect_none(
      sb.m(),
      [&](std::size_t h) {
        return detail::positive_component(oracle, rhs, h, 0.9 * delta, SignVariant::NFNPlus, ctx);
      },
      ctx);
}

enum class FindRowFailure { None, NoPositiveDenominator };

struct FindRowResult {
  std::optional<std::size_t> row;
  FindRowFailure failure = FindRowFailure::None;
  std::string diagnostic;
  /// All sign checks and magnitude medians were justified and minimum
  /// finding returned the realization's argmin.
  bool success = false;
  std::vector<double> g;
};

/// Ratio test: minimum finding over g(h) = |xi_h| / |psi_h| on rows that
/// pass the NFP+ check at delta/2, infinity elsewhere. Both QLSA outputs use
/// precision delta/(16t) and the magnitudes use AE precision delta/(16 pi t).
inline FindRowResult find_row(const ScaledBasis& sb, std::size_t k, double delta, double t, SubroutineContext& ctx) {
  require(t >= 1.0, ErrorCode::InvalidArgument, "t must be >= 1");
  const double ls_eps = delta / (16.0 * t);
  const double ae_eps = delta / (16.0 * std::numbers::pi * t);
  const QlsaOracle oracle(sb.AB, sb.state.kappa, sb.state.d, ls_eps, ctx.qlsa);
  const Eigen::VectorXd psi_rhs = sb.column(k);
  const Eigen::VectorXd xi_rhs = sb.inst->b;
  const bool xi_zero = xi_rhs.norm() == 0.0;

  FindRowResult res;
  res.g.assign(sb.m(), std::numeric_limits<double>::infinity());
  bool justified = true;
  for (std::size_t h = 0; h < sb.m(); ++h) {
    const BoostedDecision sign =
        detail::positive_component(oracle, psi_rhs, h, delta / 2.0, SignVariant::NFPPlus, ctx);
    justified = justified && sign.success;
    if (sign.value != 1) continue;
    const detail::MagnitudeEstimate num =
        xi_zero ? detail::MagnitudeEstimate{0.0, true} : detail::component_magnitude(oracle, xi_rhs, h, ae_eps, ctx);
    const detail::MagnitudeEstimate den = detail::component_magnitude(oracle, psi_rhs, h, ae_eps, ctx);
    justified = justified && num.accurate && den.accurate;
    if (den.value > 0.0) res.g[h] = num.value / den.value;
  }
  if (std::none_of(res.g.begin(), res.g.end(), [](double v) { return std::isfinite(v); })) {
    res.failure = FindRowFailure::NoPositiveDenominator;
    res.diagnostic =
        "no row passed the positive-denominator check; relax the sign check slightly or treat the basis as "
        "numerically unstable";
    return res;
  }
  const MinFindResult mf = min_finding(res.g, ctx.mode, ctx.rng);
  ctx.stats.grover_iterations += mf.iterations;
  res.row = mf.index;
  res.success = justified && mf.value == *std::min_element(res.g.begin(), res.g.end());
  return res;
}

}  // namespace qsimplex
