#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "qsimplex/context.hpp"
#include "qsimplex/error.hpp"
#include "qsimplex/primitives.hpp"
#include "qsimplex/statevector.hpp"

namespace qsimplex {

/// NFN: no false negatives (alpha >= -eps returns 1).
/// NFP: no false positives (alpha <= -eps returns 0).
/// NFNPlus / NFPPlus: the positive-sign tests built on the |1>|k> branch.
/// NFNPlus is the exact complement of NFP applied to -alpha (alpha >= eps
/// returns 1); NFPPlus is the complement of NFN applied to -alpha (returns 1
/// only when alpha > eps).
enum class SignVariant { NFN, NFP, NFNPlus, NFPPlus };

inline const char* to_string(SignVariant v) {
  switch (v) {
    case SignVariant::NFN: return "NFN";
    case SignVariant::NFP: return "NFP";
    case SignVariant::NFNPlus: return "NFN+";
    case SignVariant::NFPPlus: return "NFP+";
  }
  return "?";
}

struct SignRule {
  std::size_t accuracy_bits = 0;
  std::size_t total_bits = 0;
  double threshold = 0.0;
  bool plus_branch = false;
  /// How the folded estimate is compared with the threshold for a 1.
  enum class Compare { GreaterEq, Greater, LessEq, Less } compare = Compare::GreaterEq;
};

inline SignRule sign_rule(SignVariant v, double eps, double nfn_shift = 0.0) {
  require(eps > 0.0 && eps <= 1.0, ErrorCode::InvalidArgument, "sign-estimation precision must lie in (0, 1]");
  const double s3pi = std::numbers::sqrt3 * std::numbers::pi;
  const double thr_nfn = 1.0 / 6.0 - 2.0 * eps / s3pi;
  const double thr_nfp = 1.0 / 6.0 - 2.0 * eps / (3.0 * s3pi);
  const auto bits = [](double x) { return static_cast<std::size_t>(std::ceil(std::log2(x) - 1e-12)); };
  const std::size_t q_nfn = bits(s3pi / eps);
  const std::size_t q_nfp = bits(9.0 * s3pi / eps);
  SignRule r;
  switch (v) {
    case SignVariant::NFN:
      r = {q_nfn, q_nfn + 2, thr_nfn + nfn_shift, false, SignRule::Compare::GreaterEq};
      break;
    case SignVariant::NFP:
      r = {q_nfp, q_nfp + 2, thr_nfp, false, SignRule::Compare::Greater};
      break;
    case SignVariant::NFNPlus:
      r = {q_nfp, q_nfp + 2, thr_nfp, true, SignRule::Compare::LessEq};
      break;
    case SignVariant::NFPPlus:
      r = {q_nfn, q_nfn + 2, thr_nfn, true, SignRule::Compare::Less};
      break;
  }
  return r;
}

inline int sign_decide(const SignRule& r, double fold) {
  switch (r.compare) {
    case SignRule::Compare::GreaterEq: return fold >= r.threshold;
    case SignRule::Compare::Greater: return fold > r.threshold;
    case SignRule::Compare::LessEq: return fold <= r.threshold;
    case SignRule::Compare::Less: return fold < r.threshold;
  }
  return 0;
}

/// Coefficient the interference gadget leaves on the estimated branch.
inline double sign_gadget_coefficient(double alpha, bool plus_branch) {
  return plus_branch ? (1.0 - alpha) / 2.0 : (1.0 + alpha) / 2.0;
}

/// Exact Pr(return 1) for a real amplitude alpha, from the analytic AE law.
inline double sign_est_probability(double alpha, double eps, SignVariant v, double nfn_shift = 0.0) {
  const SignRule r = sign_rule(v, eps, nfn_shift);
  const AeDistribution d = ae_distribution_analytic(sign_gadget_coefficient(alpha, r.plus_branch), r.total_bits);
  double p = 0.0;
  for (std::size_t y = 0; y < d.probs.size(); ++y)
    if (sign_decide(r, ae_fold(y, r.total_bits))) p += d.probs[y];
  return p;
}

/// Hadamard-interference gadget on 1 + q qubits (qubit 0 is the auxiliary):
/// H, controlled-U on aux = 1, X on the bits of k on aux = 0, H.
/// The result has (1 + alpha_k)/2 on |0>|k> and (1 - alpha_k)/2 on |1>|k>.
inline Circuit sign_gadget(const PreparedUnitary& U, std::size_t k) {
  const std::size_t q = U.qubits();
  require(k < (std::size_t{1} << q), ErrorCode::InvalidArgument, "target index outside the register");
  Circuit c(q + 1);
  c.h(0);
  c.append_controlled(U.circuit, 1, {{0, true}});
  for (std::size_t b = 0; b < q; ++b)
    if ((k >> (q - 1 - b)) & 1U) c.x(1 + b, {{0, false}});
  c.h(0);
  return c;
}

struct SignDecision {
  int value = 0;
  bool accurate = false;
  double folded = 0.0;
  double theta = 0.0;
};

/// One sign-estimation run on U|0> at index k. Charges one controlled-U per
/// gadget application: 1 + 2(M - 1) per amplitude estimation.
inline SignDecision sign_est(const PreparedUnitary& U, std::size_t k, double eps, SignVariant v,
                             SubroutineContext& ctx) {
  require(U.real_amplitudes, ErrorCode::InvalidArgument, "sign estimation needs a real-amplitude unitary");
  const SignRule r = sign_rule(v, eps, v == SignVariant::NFN ? ctx.nfn_threshold_shift : 0.0);
  const Circuit gadget = sign_gadget(U, k);
  const std::size_t q = U.qubits();
  const std::size_t target = (r.plus_branch ? (std::size_t{1} << q) : 0) | k;

  AeOutcome o;
  double theta = 0.0;
  if (ctx.mode == ExecutionMode::Sampling && ae_circuit_feasible(r.total_bits, q + 1)) {
    std::vector<char> good(std::size_t{1} << (q + 1), 0);
    good[target] = 1;
    const AeDistribution d = ae_distribution_circuit(gadget, good, r.total_bits);
    o = ae_sample(d, r.accuracy_bits, ctx.rng);
    theta = d.theta;
  } else {
    StateVector s(q + 1);
    gadget.apply(s);
    const auto d = ctx.ae_cache.get(std::abs(s[target]), r.total_bits);
    o = ae_sample(*d, r.accuracy_bits, ctx.rng);
    theta = d->theta;
  }

  const std::uint64_t M = std::uint64_t{1} << r.total_bits;
  const std::uint64_t applications = 1 + 2 * (M - 1);
  ctx.stats.ae_repetitions += M - 1;
  ctx.stats.controlled_u_calls += applications;
  ctx.stats.add_scaled(U.per_call, applications);
  ctx.stats.basic_gates += applications * (gadget.size() - U.circuit.size());

  SignDecision out;
  out.value = sign_decide(r, o.folded);
  out.accurate = o.accurate;
  out.folded = o.folded;
  out.theta = theta;
  return out;
}

}  // namespace qsimplex
