#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qsimplex/classical.hpp"
#include "qsimplex/context.hpp"
#include "qsimplex/params.hpp"
#include "qsimplex/pricing.hpp"
#include "qsimplex/ratio_test.hpp"
#include "qsimplex/scaled_basis.hpp"

namespace qsimplex {

enum class OutcomeTag { Optimal, Unbounded, Pivot, Failure };

enum class FailureKind { None, NoPositiveDenominator, IterationCap };

inline const char* to_string(OutcomeTag t) {
  switch (t) {
    case OutcomeTag::Optimal: return "optimal";
    case OutcomeTag::Unbounded: return "unbounded";
    case OutcomeTag::Pivot: return "pivot";
    case OutcomeTag::Failure: return "failure";
  }
  return "?";
}

inline const char* to_string(FailureKind f) {
  switch (f) {
    case FailureKind::None: return "none";
    case FailureKind::NoPositiveDenominator: return "no_positive_denominator";
    case FailureKind::IterationCap: return "iteration_cap";
  }
  return "?";
}

struct SubroutineTimings {
  double normalize_ms = 0.0;
  double is_optimal_ms = 0.0;
  double find_column_ms = 0.0;
  double is_unbounded_ms = 0.0;
  double find_row_ms = 0.0;
};

struct IterationOutcome {
  OutcomeTag tag = OutcomeTag::Optimal;
  FailureKind failure = FailureKind::None;
  std::size_t entering = 0;
  std::size_t leaving_row = 0;
  std::size_t leaving_column = 0;
  QueryStats stats;
  double kappa = 1.0;
  bool cost_degenerate = false;
  /// Optimal because neither pricing variant found a column, not because
  /// the optimality test returned 1.
  bool numerically_optimal = false;
  bool pricing_fallback = false;
  /// Scaled reduced cost and ratio of the chosen pivot, from exact arithmetic.
  double entering_rho = 0.0;
  double leaving_ratio = 0.0;
  std::string diagnostic;
  SubroutineTimings timings;
};

namespace detail {

template <class F>
auto timed(double& ms, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = f();
  ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

/// One simplex iteration: normalize, optimality test, pricing, unboundedness
/// test, ratio test. An optimality verdict of 1 is only trusted after an NFP
/// pricing pass also finds nothing; a verdict of 0 is followed by NFN pricing
/// with NFP fallback.
inline IterationOutcome simplex_iter(const LpInstance& inst, const std::vector<std::size_t>& basis,
                                     const PrecisionParams& params, SubroutineContext& ctx) {
  params.validate();
  IterationOutcome out;
  const QueryStats before = ctx.stats;
  ctx.repetitions = params.repetitions;
  const ScaledBasis sb =
      detail::timed(out.timings.normalize_ms, [&] { return scale_basis(inst, basis, params.eps_prime); });
  out.kappa = sb.state.kappa;
  out.cost_degenerate = sb.state.cost_degenerate;

  const DetectionResult opt = detail::timed(out.timings.is_optimal_ms, [&] { return is_optimal(sb, params.epsilon, ctx); });
  FindColumnOptions fc_opts;
  if (opt.value == 1) {
    fc_opts.variant = SignVariant::NFP;
    fc_opts.nfp_fallback = false;
  }
  const FindColumnResult fc =
      detail::timed(out.timings.find_column_ms, [&] { return find_column(sb, params.epsilon, ctx, fc_opts); });
  if (!fc.column) {
    out.tag = OutcomeTag::Optimal;
    out.numerically_optimal = opt.value == 0;
    out.stats = ctx.stats - before;
    return out;
  }
  out.entering = *fc.column;
  out.pricing_fallback = fc.used_fallback || opt.value == 1;
  out.entering_rho = sb.rho(out.entering);

  const DetectionResult unb =
      detail::timed(out.timings.is_unbounded_ms, [&] { return is_unbounded(sb, out.entering, params.delta, ctx); });
  if (unb.value == 1) {
    out.tag = OutcomeTag::Unbounded;
    out.stats = ctx.stats - before;
    return out;
  }
  const FindRowResult fr = detail::timed(out.timings.find_row_ms,
                                         [&] { return find_row(sb, out.entering, params.delta, params.t, ctx); });
  out.stats = ctx.stats - before;
  if (!fr.row) {
    out.tag = OutcomeTag::Failure;
    out.failure = FailureKind::NoPositiveDenominator;
    out.diagnostic = fr.diagnostic;
    return out;
  }
  out.tag = OutcomeTag::Pivot;
  out.leaving_row = *fr.row;
  out.leaving_column = basis[*fr.row];
  const Eigen::VectorXd u = sb.direction(out.entering);
  const Eigen::VectorXd x = sb.x_basic();
  out.leaving_ratio = x(static_cast<Eigen::Index>(*fr.row)) / u(static_cast<Eigen::Index>(*fr.row));
  return out;
}

/// Per-iteration record of a quantum-simulated run.
struct TraceRecord {
  std::size_t iteration = 0;
  std::vector<std::size_t> basis;
  IterationOutcome outcome;
  /// Classical cross-checks on the basis the iteration started from.
  double classical_min_rho = 0.0;
  bool classical_optimal = false;
  bool classical_unbounded_entering = false;
  double classical_min_ratio = 0.0;
  double objective = 0.0;
};

struct QuantumRunResult {
  OutcomeTag status = OutcomeTag::Optimal;
  FailureKind failure = FailureKind::None;
  std::vector<std::size_t> basis;
  double objective = 0.0;
  std::size_t iterations = 0;
  QueryStats stats;
  std::vector<TraceRecord> trace;
};

/// Minimum over nonbasic k of the scaled reduced cost rho_k.
inline double classical_min_rho(const LpInstance& inst, const std::vector<std::size_t>& basis) {
  const BasisState st = make_basis(inst, basis);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k : st.nonbasic) best = std::min(best, scaled_reduced_cost(inst, basis, k));
  return best;
}

/// Iterates simplex_iter until Optimal, Unbounded, Failure or the cap.
inline QuantumRunResult solve_quantum(const LpInstance& inst, std::vector<std::size_t> basis,
                                      const PrecisionParams& params, SubroutineContext& ctx,
                                      std::size_t max_iterations = 0,
                                      const std::function<void(const TraceRecord&)>& on_record = {}) {
  params.validate();
  require_feasible(inst, basis);
  if (max_iterations == 0) max_iterations = 50 * (inst.m() + inst.n());
  QuantumRunResult res;
  for (;;) {
    if (res.iterations >= max_iterations) {
      res.status = OutcomeTag::Failure;
      res.failure = FailureKind::IterationCap;
      break;
    }
    TraceRecord rec;
    rec.iteration = res.iterations;
    rec.basis = basis;
    rec.objective = inst.c.dot(basic_solution(inst, basis));
    rec.classical_min_rho = classical_min_rho(inst, basis);
    rec.classical_optimal = reduced_costs(inst, basis).minCoeff() >= -1e-9;
    rec.outcome = simplex_iter(inst, basis, params, ctx);
    res.stats += rec.outcome.stats;
    ++res.iterations;
    if (rec.outcome.tag == OutcomeTag::Pivot || rec.outcome.tag == OutcomeTag::Unbounded) {
      const RatioTestResult rt = ratio_test(inst, basis, rec.outcome.entering, 0.0);
      rec.classical_unbounded_entering = rt.unbounded;
      rec.classical_min_ratio = rt.unbounded ? std::numeric_limits<double>::infinity() : rt.ratio;
    }
    const OutcomeTag tag = rec.outcome.tag;
    const FailureKind fail = rec.outcome.failure;
    if (tag == OutcomeTag::Pivot) basis[rec.outcome.leaving_row] = rec.outcome.entering;
    if (on_record) on_record(rec);
    res.trace.push_back(std::move(rec));
    if (tag != OutcomeTag::Pivot) {
      res.status = tag;
      res.failure = fail;
      break;
    }
  }
  res.basis = basis;
  res.objective = inst.c.dot(basic_solution(inst, basis));
  return res;
}

}  // namespace qsimplex
