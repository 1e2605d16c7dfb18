#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/classical.hpp"
#include "qsimplex/context.hpp"
#include "qsimplex/cost_model.hpp"
#include "qsimplex/instances.hpp"
#include "qsimplex/io.hpp"
#include "qsimplex/norm_estimation.hpp"
#include "qsimplex/pricing.hpp"
#include "qsimplex/primitives.hpp"
#include "qsimplex/ratio_test.hpp"
#include "qsimplex/scaled_basis.hpp"
#include "qsimplex/sign_estimation.hpp"
#include "qsimplex/simplex_iter.hpp"

namespace qsimplex {

/// Pinned acceptance thresholds.
namespace thresholds {
inline constexpr double kSuccessRate = 0.75;
inline constexpr double kSignHigh = 0.75;
inline constexpr double kSignLow = 0.25;
inline constexpr double kAeSlope = -1.0;
inline constexpr double kAeSlopeTol = 0.1;
inline constexpr double kGroverExponent = 0.5;
inline constexpr double kGroverExponentTol = 0.15;
inline constexpr double kEndToEndFactor = 2.2;
}  // namespace thresholds

struct SuiteResult {
  std::string id;
  std::string name;
  bool passed = true;
  std::vector<std::string> details;
  /// Seed of the first run that violated an exact (100%) requirement.
  std::optional<std::uint64_t> counterexample_seed;

  void check(bool ok, const std::string& what) {
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    passed = passed && ok;
  }
};

/// Classical quantities the suites compare against. Defaults use the
/// library's classical module; tests inject independent implementations.
struct VerifyOracles {
  /// c_k - c_B^T A_B^-1 A_k over ||c_B|| ||(A_B^-1 A_k, c_k/||c_B||)||.
  std::function<double(const LpInstance&, const std::vector<std::size_t>&, std::size_t)> scaled_reduced_cost;
  /// A_B^-1 A_k.
  std::function<Eigen::VectorXd(const LpInstance&, const std::vector<std::size_t>&, std::size_t)> direction;
  /// A_B^-1 b.
  std::function<Eigen::VectorXd(const LpInstance&, const std::vector<std::size_t>&)> basic_values;
  /// ||A_B^-1 A_S||_F^2.
  std::function<double(const LpInstance&, const std::vector<std::size_t>&, const std::vector<std::size_t>&)>
      inverse_frobenius_sq;
  /// Phase-estimation outcome law for phase phi on `bits` qubits.
  std::function<std::vector<double>(double, std::size_t)> pe_distribution;
  /// Pr(sign estimation returns 1) for amplitude alpha.
  std::function<double(double, double, SignVariant, double)> sign_probability;
  /// Optimal objective, or nullopt when unbounded.
  std::function<std::optional<double>(const LpInstance&, const std::vector<std::size_t>&)> optimum;

  static VerifyOracles library() {
    VerifyOracles o;
    o.scaled_reduced_cost = [](const LpInstance& inst, const std::vector<std::size_t>& b, std::size_t k) {
      return qsimplex::scaled_reduced_cost(inst, b, k);
    };
    o.direction = [](const LpInstance& inst, const std::vector<std::size_t>& b, std::size_t k) {
      return BasisFactor(inst, b).solve(inst.A.column_dense(k));
    };
    o.basic_values = [](const LpInstance& inst, const std::vector<std::size_t>& b) {
      return BasisFactor(inst, b).solve(inst.b);
    };
    o.inverse_frobenius_sq = [](const LpInstance& inst, const std::vector<std::size_t>& b,
                                const std::vector<std::size_t>& cols) {
      return (BasisFactor(inst, b).inverse() * inst.columns_dense(cols)).squaredNorm();
    };
    o.pe_distribution = [](double phi, std::size_t bits) { return qsimplex::pe_distribution(phi, bits); };
    o.sign_probability = [](double a, double e, SignVariant v, double s) { return sign_est_probability(a, e, v, s); };
    o.optimum = [](const LpInstance& inst, const std::vector<std::size_t>& b) -> std::optional<double> {
      const ClassicalResult r = solve_classical(inst, b);
      if (r.status != ClassicalStatus::Optimal) return std::nullopt;
      return r.objective;
    };
    return o;
  }
};

struct VerifyConfig {
  std::uint64_t seed = 1;
  ExecutionMode mode = ExecutionMode::Analytic;
  QlsaErrorMode qlsa = QlsaErrorMode::Zero;
  std::size_t repetitions = 15;
  /// Precision grid for the sign-estimation suite.
  std::vector<double> sign_epsilons = {0.05, 0.1, 0.2};
  double pricing_epsilon = 0.05;
  double norm_epsilon = 0.1;
  double loop_epsilon = 0.1;
  double delta = 0.1;
  std::vector<double> ratio_ts = {2.0, 10.0, 100.0};
  /// Norm-estimation alpha; 0 selects kappa.
  double alpha = 0.0;
  /// Test hook forwarded to SubroutineContext::nfn_threshold_shift.
  double nfn_threshold_shift = 0.0;

  std::size_t pe_phases = 50;
  std::size_t pricing_runs = 200;
  std::size_t ratio_triples = 100;
  std::size_t unbounded_instances = 50;
  std::size_t norm_instances = 30;
  std::size_t loop_instances = 20;
  std::size_t scaling_runs = 1000;

  [[nodiscard]] SubroutineContext context(std::uint64_t run_seed) const {
    SubroutineContext ctx(run_seed);
    ctx.mode = mode;
    ctx.qlsa.mode = qlsa;
    ctx.repetitions = repetitions;
    ctx.nfn_threshold_shift = nfn_threshold_shift;
    return ctx;
  }

  /// Distinct deterministic seed per (suite, run).
  [[nodiscard]] std::uint64_t run_seed(std::uint64_t suite, std::uint64_t run) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(suite), static_cast<std::uint32_t>(run)};
    std::array<std::uint32_t, 2> w{};
    seq.generate(w.begin(), w.end());
    return (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
  }
};

namespace detail {

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

/// Phase estimation: q accurate bits with probability >= 1 - eps_fail on
/// pe_total_qubits(q, eps_fail) qubits, for random phases.
inline SuiteResult suite_phase_estimation(const VerifyConfig& cfg, const VerifyOracles& o) {
  SuiteResult r{"1", "phase estimation precision", true, {}, std::nullopt};
  const std::pair<std::size_t, double> grid[] = {{3, 0.25}, {4, 0.1}, {5, 0.05}, {6, 0.01}};
  for (const auto& [q, fail] : grid) {
    const std::size_t bits = pe_total_qubits(q, fail);
    const double tol = std::ldexp(1.0, -static_cast<int>(q));
    double worst = 1.0;
    for (std::size_t i = 0; i < cfg.pe_phases; ++i) {
      const std::uint64_t s = cfg.run_seed(1, i);
      std::mt19937_64 rng(s);
      const double phi = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      const std::vector<double> p = o.pe_distribution(phi, bits);
      double good = 0.0;
      for (std::size_t y = 0; y < p.size(); ++y)
        if (phase_distance(phi, static_cast<double>(y) / static_cast<double>(p.size())) < tol) good += p[y];
      if (good < 1.0 - fail && !r.counterexample_seed) r.counterexample_seed = s;
      worst = std::min(worst, good);
    }
    r.check(worst >= 1.0 - fail, detail::fmt("q=%g eps_fail=%g qubits=%g: min Pr(accurate)=%.6f", static_cast<double>(q),
                                             fail, static_cast<double>(bits), worst));
  }
  return r;
}

/// NFN / NFP probability implications on a 101-point alpha grid.
inline SuiteResult suite_sign_estimation(const VerifyConfig& cfg, const VerifyOracles& o) {
  SuiteResult r{"2", "sign estimation NFN/NFP guarantees", true, {}, std::nullopt};
  for (double eps : cfg.sign_epsilons) {
    double nfn_hi = 1.0, nfn_lo = 0.0, nfp_hi = 1.0, nfp_lo = 0.0;
    double nfn_lo_at = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double a = static_cast<double>(i - 50) / 100.0;
      const double p_nfn = o.sign_probability(a, eps, SignVariant::NFN, cfg.nfn_threshold_shift);
      const double p_nfp0 = 1.0 - o.sign_probability(a, eps, SignVariant::NFP, 0.0);
      if (a >= -eps) nfn_hi = std::min(nfn_hi, p_nfn);
      if (a < -2.0 * eps && p_nfn > nfn_lo) {
        nfn_lo = p_nfn;
        nfn_lo_at = a;
      }
      if (a <= -eps) nfp_hi = std::min(nfp_hi, p_nfp0);
      if (a > eps / 3.0) nfp_lo = std::max(nfp_lo, p_nfp0);
    }
    r.check(nfn_hi >= thresholds::kSignHigh, detail::fmt("eps=%g: min Pr(NFN=1 | a >= -eps) = %.6f", eps, nfn_hi));
    r.check(nfn_lo <= thresholds::kSignLow,
            detail::fmt("eps=%g: max Pr(NFN=1 | a < -2eps) = %.6f (at a=%g)", eps, nfn_lo, nfn_lo_at));
    r.check(nfp_hi >= thresholds::kSignHigh, detail::fmt("eps=%g: min Pr(NFP=0 | a <= -eps) = %.6f", eps, nfp_hi));
    r.check(nfp_lo <= thresholds::kSignLow, detail::fmt("eps=%g: max Pr(NFP=0 | a > eps/3) = %.6f", eps, nfp_lo));
  }
  return r;
}

/// Pricing soundness and completeness over seeded find_column runs.
inline SuiteResult suite_pricing(const VerifyConfig& cfg, const VerifyOracles& o) {
  SuiteResult r{"3", "find_column soundness and completeness", true, {}, std::nullopt};
  const double eps = cfg.pricing_epsilon;
  std::size_t flagged = 0, sound = 0, strong = 0, strong_hit = 0;
  for (std::size_t run = 0; run < cfg.pricing_runs; ++run) {
    const std::uint64_t s = cfg.run_seed(3, run);
    std::mt19937_64 gen(s);
    const GeneratedLp lp = random_pricing_lp(4, 12, 2.2 * eps, gen);
    SubroutineContext ctx = cfg.context(s);
    const ScaledBasis sb = scale_basis(lp.inst, lp.basis);
    const FindColumnResult fc = find_column(sb, eps, ctx);
    if (fc.success && fc.column) {
      ++flagged;
      if (o.scaled_reduced_cost(lp.inst, lp.basis, *fc.column) < -eps) ++sound;
      else if (!r.counterexample_seed) r.counterexample_seed = s;
    }
    for (std::size_t i = 0; i < fc.domain.size(); ++i) {
      if (o.scaled_reduced_cost(lp.inst, lp.basis, fc.domain[i]) < -2.2 * eps) {
        ++strong;
        strong_hit += (fc.marked[i] || fc.column == fc.domain[i]) ? 1 : 0;
      }
    }
  }
  const double runs = static_cast<double>(cfg.pricing_runs);
  r.check(sound == flagged, detail::fmt("success-flagged returns with rho < -eps: %g / %g", static_cast<double>(sound),
                                        static_cast<double>(flagged)));
  r.check(static_cast<double>(flagged) / runs >= thresholds::kSuccessRate,
          detail::fmt("success rate %.4f over %g runs", static_cast<double>(flagged) / runs, runs));
  const double hit = strong ? static_cast<double>(strong_hit) / static_cast<double>(strong) : 1.0;
  r.check(hit >= thresholds::kSuccessRate,
          detail::fmt("columns with rho < -2.2 eps returned or marked: %.4f of %g", hit, static_cast<double>(strong)));
  return r;
}

/// Ratio-test bound ratio(l) <= 2/(2t-1) ||x||/||u|| + (2t+1)/(2t-1) r*_delta.
inline SuiteResult suite_ratio_test(const VerifyConfig& cfg, const VerifyOracles& o) {
  SuiteResult r{"4", "find_row ratio bound", true, {}, std::nullopt};
  const double delta = cfg.delta;
  for (double t : cfg.ratio_ts) {
    std::size_t ok = 0, flagged = 0, flagged_ok = 0;
    double worst_rel = 0.0;
    for (std::size_t run = 0; run < cfg.ratio_triples; ++run) {
      const std::uint64_t s = cfg.run_seed(4, run);
      std::mt19937_64 gen(s);
      const GeneratedLp lp = random_direction_lp(4, DirectionKind::Bounded, 2.0 * delta, gen);
      const std::size_t k = lp.inst.m();
      const Eigen::VectorXd u = o.direction(lp.inst, lp.basis, k);
      const Eigen::VectorXd x = o.basic_values(lp.inst, lp.basis);
      double rstar = std::numeric_limits<double>::infinity();
      for (Eigen::Index h = 0; h < u.size(); ++h)
        if (u(h) > delta * u.norm()) rstar = std::min(rstar, x(h) / u(h));
      const double bound = 2.0 / (2.0 * t - 1.0) * x.norm() / u.norm() + (2.0 * t + 1.0) / (2.0 * t - 1.0) * rstar;
      SubroutineContext ctx = cfg.context(s ^ static_cast<std::uint64_t>(t));
      const ScaledBasis sb = scale_basis(lp.inst, lp.basis);
      const FindRowResult fr = find_row(sb, k, delta, t, ctx);
      if (!fr.row) continue;
      const auto l = static_cast<Eigen::Index>(*fr.row);
      const bool within = u(l) > 0.0 && x(l) / u(l) <= bound * (1.0 + 1e-12);
      if (u(l) > 0.0) worst_rel = std::max(worst_rel, (x(l) / u(l) - rstar) / rstar);
      if (fr.success) {
        ++flagged;
        flagged_ok += within ? 1 : 0;
        ok += within ? 1 : 0;
        if (!within && !r.counterexample_seed) r.counterexample_seed = s;
      }
    }
    const double n = static_cast<double>(cfg.ratio_triples);
    r.check(static_cast<double>(ok) / n >= thresholds::kSuccessRate,
            detail::fmt("t=%g: success and bound held in %.4f of runs (bound given success %g/%g)", t,
                        static_cast<double>(ok) / n, static_cast<double>(flagged_ok), static_cast<double>(flagged)));
    r.details.push_back(detail::fmt("     t=%g: largest relative excess over r* = %.6f", t, worst_rel));
  }
  return r;
}

/// IsUnbounded soundness and detection.
inline SuiteResult suite_unbounded(const VerifyConfig& cfg, const VerifyOracles& o) {
  SuiteResult r{"5", "is_unbounded soundness and detection", true, {}, std::nullopt};
  const double delta = cfg.delta;
  std::size_t flagged_ones = 0, sound = 0, detected = 0, bounded_zero = 0;
  for (std::size_t run = 0; run < 2 * cfg.unbounded_instances; ++run) {
    const bool unbounded = run < cfg.unbounded_instances;
    const std::uint64_t s = cfg.run_seed(5, run);
    std::mt19937_64 gen(s);
    const GeneratedLp lp = random_direction_lp(
        4, unbounded ? DirectionKind::Unbounded : DirectionKind::Bounded, unbounded ? 0.5 * delta : 2.0 * delta, gen);
    const std::size_t k = lp.inst.m();
    SubroutineContext ctx = cfg.context(s);
    const ScaledBasis sb = scale_basis(lp.inst, lp.basis);
    const DetectionResult d = is_unbounded(sb, k, delta, ctx);
    const Eigen::VectorXd u = o.direction(lp.inst, lp.basis, k);
    if (d.value == 1 && d.success) {
      ++flagged_ones;
      if (u.maxCoeff() < delta * u.norm()) ++sound;
      else if (!r.counterexample_seed) r.counterexample_seed = s;
    }
    if (unbounded && d.value == 1) ++detected;
    if (!unbounded && d.value == 0) ++bounded_zero;
  }
  const double n = static_cast<double>(cfg.unbounded_instances);
  r.check(sound == flagged_ones, detail::fmt("success-flagged 1s with every u_h < delta ||u||: %g / %g",
                                             static_cast<double>(sound), static_cast<double>(flagged_ones)));
  r.check(static_cast<double>(detected) / n >= thresholds::kSuccessRate,
          detail::fmt("unbounded instances detected: %.4f", static_cast<double>(detected) / n));
  r.details.push_back(detail::fmt("     bounded instances answered 0: %.4f", static_cast<double>(bounded_zero) / n));
  return r;
}

/// Frobenius-norm estimation relative error.
inline SuiteResult suite_norm_estimation(const VerifyConfig& cfg, const VerifyOracles& o) {
  SuiteResult r{"6", "norm_estimate relative error", true, {}, std::nullopt};
  const double eps = cfg.norm_epsilon;
  std::size_t flagged = 0, flagged_ok = 0, within = 0;
  double worst = 0.0;
  for (std::size_t run = 0; run < cfg.norm_instances; ++run) {
    const std::uint64_t s = cfg.run_seed(6, run);
    std::mt19937_64 gen(s);
    const GeneratedLp lp = random_pricing_lp(4, 10, -1.0, gen);
    SubroutineContext ctx = cfg.context(s);
    const ScaledBasis sb = scale_basis(lp.inst, lp.basis);
    const NormEstimate est = norm_estimate(sb, eps, ctx, cfg.alpha);
    const double exact = o.inverse_frobenius_sq(lp.inst, lp.basis, sb.nonbasic());
    const double rel = std::abs(est.estimate - exact) / exact;
    worst = std::max(worst, rel);
    within += rel <= eps ? 1 : 0;
    if (est.success) {
      ++flagged;
      flagged_ok += rel <= eps ? 1 : 0;
      if (rel > eps && !r.counterexample_seed) r.counterexample_seed = s;
    }
  }
  const double n = static_cast<double>(cfg.norm_instances);
  r.check(flagged_ok == flagged, detail::fmt("success-flagged estimates within eps=%g: %g / %g", eps,
                                             static_cast<double>(flagged_ok), static_cast<double>(flagged)));
  r.check(static_cast<double>(flagged) / n >= thresholds::kSuccessRate,
          detail::fmt("success rate %.4f (all within eps: %.4f, worst relative error %.6f)",
                      static_cast<double>(flagged) / n, static_cast<double>(within) / n, worst));
  return r;
}

/// Instance for the Grover-scaling check: slack basis of size 2 and n - 2
/// structural columns of which exactly one has a negative reduced cost.
inline GeneratedLp single_marked_lp(std::size_t n, std::mt19937_64& gen) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, static_cast<Eigen::Index>(n));
  A(0, 0) = 1.0;
  A(1, 1) = 1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  std::uniform_real_distribution<double> u(0.2, 1.0);
  std::uniform_int_distribution<std::size_t> pick(2, n - 1);
  const std::size_t marked = pick(gen);
  for (std::size_t k = 2; k < n; ++k) {
    A(0, static_cast<Eigen::Index>(k)) = u(gen);
    A(1, static_cast<Eigen::Index>(k)) = u(gen);
    c(static_cast<Eigen::Index>(k)) = k == marked ? -1.0 : 1.0 + u(gen);
  }
  c(0) = 0.3;
  c(1) = 0.4;
  return {LpInstance::from_dense(A, Eigen::Vector2d(1.0, 1.0), c), {0, 1}};
}

/// Query scaling: AE repetitions vs 1/eps and Grover iterations vs n.
inline SuiteResult suite_scaling(const VerifyConfig& cfg, const VerifyOracles&) {
  SuiteResult r{"7", "query scaling", true, {}, std::nullopt};
  {
    std::vector<double> lx, ly;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
      SubroutineContext ctx = cfg.context(cfg.run_seed(7, 0));
      Eigen::VectorXd v(4);
      v << 0.5, -0.5, 0.5, 0.5;
      const PreparedUnitary U = prepare_sparse_state(v);
      sign_est(U, 1, eps, SignVariant::NFN, ctx);
      lx.push_back(std::log(eps));
      ly.push_back(std::log(static_cast<double>(ctx.stats.ae_repetitions)));
    }
    const double sl = detail::slope(lx, ly);
    r.check(std::abs(sl - thresholds::kAeSlope) <= thresholds::kAeSlopeTol,
            detail::fmt("AE repetitions vs eps log-log slope %.4f (target -1 +- 0.1)", sl));
  }
  {
    std::vector<double> lx, ly;
    for (std::size_t n : {8, 16, 32, 64}) {
      double total = 0.0;
      for (std::size_t run = 0; run < cfg.scaling_runs; ++run) {
        const std::uint64_t s = cfg.run_seed(70 + n, run);
        std::mt19937_64 gen(s);
        const GeneratedLp lp = single_marked_lp(n, gen);
        SubroutineContext ctx = cfg.context(s);
        const ScaledBasis sb = scale_basis(lp.inst, lp.basis);
        find_column(sb, cfg.loop_epsilon, ctx);
        total += static_cast<double>(ctx.stats.grover_iterations);
      }
      lx.push_back(std::log(static_cast<double>(n)));
      ly.push_back(std::log(total / static_cast<double>(cfg.scaling_runs)));
      r.details.push_back(detail::fmt("     n=%g: mean Grover iterations %.3f", static_cast<double>(n),
                                      total / static_cast<double>(cfg.scaling_runs)));
    }
    const double sl = detail::slope(lx, ly);
    r.check(std::abs(sl - thresholds::kGroverExponent) <= thresholds::kGroverExponentTol,
            detail::fmt("Grover iterations vs n exponent %.4f (target 0.5 +- 0.15)", sl));
  }
  return r;
}

/// Full quantum-simulated loop on bounded nondegenerate LPs.
inline SuiteResult suite_end_to_end(const VerifyConfig& cfg, const VerifyOracles& o) {
  SuiteResult r{"8", "end-to-end simplex loop", true, {}, std::nullopt};
  const double eps = cfg.loop_epsilon;
  std::size_t good = 0, classical_ok = 0;
  for (std::size_t run = 0; run < cfg.loop_instances; ++run) {
    const std::uint64_t s = cfg.run_seed(8, run);
    std::mt19937_64 gen(s);
    const GeneratedLp lp = random_bounded_lp(4, 6, gen);
    SubroutineContext ctx = cfg.context(s);
    PrecisionParams p;
    p.epsilon = eps;
    p.delta = cfg.delta;
    p.repetitions = cfg.repetitions;
    const QuantumRunResult q = solve_quantum(lp.inst, lp.basis, p, ctx);
    bool ok = q.status == OutcomeTag::Optimal;
    if (ok) {
      std::vector<char> in(lp.inst.n(), 0);
      for (std::size_t j : q.basis) in[j] = 1;
      for (std::size_t k = 0; k < lp.inst.n(); ++k)
        if (!in[k] && o.scaled_reduced_cost(lp.inst, q.basis, k) < -thresholds::kEndToEndFactor * eps) ok = false;
    }
    good += ok ? 1 : 0;
    const ClassicalResult c = solve_classical(lp.inst, lp.basis);
    const std::optional<double> opt = o.optimum(lp.inst, lp.basis);
    bool c_ok = c.status == ClassicalStatus::Optimal && opt && std::abs(c.objective - *opt) <= 1e-8;
    if (c_ok) {
      std::vector<char> in(lp.inst.n(), 0);
      for (std::size_t j : c.basis) in[j] = 1;
      for (std::size_t k = 0; k < lp.inst.n(); ++k)
        if (!in[k] && o.scaled_reduced_cost(lp.inst, c.basis, k) < -1e-9) c_ok = false;
    }
    classical_ok += c_ok ? 1 : 0;
    if (!c_ok && !r.counterexample_seed) r.counterexample_seed = s;
  }
  const double n = static_cast<double>(cfg.loop_instances);
  r.check(static_cast<double>(good) / n >= thresholds::kSuccessRate,
          detail::fmt("runs ending with every rho >= -2.2 eps: %.4f", static_cast<double>(good) / n));
  r.check(classical_ok == cfg.loop_instances, detail::fmt("classical solver exactly optimal: %g / %g",
                                                          static_cast<double>(classical_ok), n));
  return r;
}

/// Cost-model split check over a parameter grid: split pricing is cheaper
/// exactly when n/m >= 2 kappa d^2 / d_c, evaluated through cost_report.
inline SuiteResult suite_column_split(const VerifyConfig&, const VerifyOracles&) {
  SuiteResult r{"10", "column-split threshold", true, {}, std::nullopt};
  std::size_t points = 0, agree = 0, boundary = 0, strict_mismatch = 0;
  PrecisionParams p;
  for (long m : {4L, 16L, 64L})
    for (long dc : {1L, 2L, 4L})
      for (long d : {1L, 2L, 4L})
        for (long kappa : {1L, 2L, 5L})
          for (long num : {1L, 3L, 4L, 5L, 8L, 12L}) {
            // n/m = (num/4) * 2 kappa d^2 / d_c, rounded to an integer n.
            const long n = std::max(1L, (num * 2 * kappa * d * d * m) / (4 * dc));
            const CostReport rep = cost_report(static_cast<std::size_t>(m), static_cast<std::size_t>(n),
                                               static_cast<double>(dc), static_cast<double>(d),
                                               static_cast<double>(kappa), 1.0, 1.0, p);
            const bool holds = n * dc >= 2 * kappa * d * d * m;
            const bool strict = n * dc > 2 * kappa * d * d * m;
            ++points;
            agree += rep.split.split_cheaper == holds ? 1 : 0;
            if (n * dc == 2 * kappa * d * d * m) {
              ++boundary;
              strict_mismatch += rep.split.split_cheaper != strict ? 1 : 0;
            }
          }
  r.check(agree == points, detail::fmt("split cheaper iff n/m >= 2 kappa d^2/d_c: %g / %g grid points",
                                       static_cast<double>(agree), static_cast<double>(points)));
  r.details.push_back(detail::fmt("     boundary points n/m = 2 kappa d^2/d_c: %g (split cheaper at %g of them)",
                                  static_cast<double>(boundary), static_cast<double>(strict_mismatch)));
  return r;
}

/// Criteria 3-6 under the worst-case QLSA error model.
inline SuiteResult suite_adversarial(const VerifyConfig& base, const VerifyOracles& o) {
  SuiteResult r{"9", "worst-case QLSA error", true, {}, std::nullopt};
  VerifyConfig cfg = base;
  cfg.qlsa = QlsaErrorMode::Worst;
  for (const auto& f : {suite_pricing, suite_ratio_test, suite_unbounded, suite_norm_estimation}) {
    const SuiteResult sub = f(cfg, o);
    for (const std::string& d : sub.details) r.details.push_back("[" + sub.id + "] " + d);
    r.passed = r.passed && sub.passed;
    if (!r.counterexample_seed) r.counterexample_seed = sub.counterexample_seed;
  }
  return r;
}

inline std::vector<SuiteResult> run_all_suites(const VerifyConfig& cfg, const VerifyOracles& o) {
  return {suite_phase_estimation(cfg, o), suite_sign_estimation(cfg, o), suite_pricing(cfg, o),
          suite_ratio_test(cfg, o),      suite_unbounded(cfg, o),        suite_norm_estimation(cfg, o),
          suite_scaling(cfg, o),         suite_end_to_end(cfg, o),       suite_adversarial(cfg, o),
          suite_column_split(cfg, o)};
}

}  // namespace qsimplex
