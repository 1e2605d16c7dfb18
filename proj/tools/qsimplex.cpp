#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsimplex/qsimplex.hpp"

using namespace qsimplex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string instance;
  PrecisionParams params;
  std::uint64_t seed = 0;
  std::string mode = "analytic";
  std::string qlsa_error;
  std::size_t max_iters = 0;
  std::string out_trace;
  std::string out_summary;
  std::string out_report;
  std::string trace;
  std::vector<std::size_t> basis;
  std::vector<std::string> suites;
  double mutate_nfn_threshold = 0.0;
};

void add_common(CLI::App* cmd, Options& o, bool instance_required = true) {
  auto* inst = cmd->add_option("--instance", o.instance, "LP instance (.json or .mps)");
  if (instance_required) inst->required();
  cmd->add_option("--epsilon", o.params.epsilon, "pricing precision")->capture_default_str();
  cmd->add_option("--delta", o.params.delta, "ratio-test precision")->capture_default_str();
  cmd->add_option("--t", o.params.t, "ratio-test accuracy parameter")->capture_default_str();
  cmd->add_option("--eps-prime", o.params.eps_prime, "spectral-norm estimate precision")->capture_default_str();
  cmd->add_option("--repetitions", o.params.repetitions, "majority-vote repetitions (odd)")->capture_default_str();
  cmd->add_option("--alpha", o.params.alpha, "norm-estimation alpha (0 selects kappa)")->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed")->envname("QSIMPLEX_SEED")->capture_default_str();
  cmd->add_option("--mode", o.mode, "analytic | sampling")->capture_default_str();
  cmd->add_option("--qlsa-error", o.qlsa_error, "zero | worst | random");
  cmd->add_option("--max-iters", o.max_iters, "iteration cap (0: 50 (m + n))")->capture_default_str();
  cmd->add_option("--basis", o.basis, "start basis, comma separated column indices")->delimiter(',');
}

std::vector<std::size_t> start_basis(const Options& o, const LoadedLp& lp) {
  if (!o.basis.empty()) return o.basis;
  if (lp.basis) return *lp.basis;
  return slack_basis(lp.inst);
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

int cmd_solve(const Options& o) {
  o.params.validate();
  const LoadedLp lp = load_lp(o.instance);
  const std::vector<std::size_t> basis = start_basis(o, lp);
  require_feasible(lp.inst, basis);

  SubroutineContext ctx(o.seed);
  ctx.mode = parse_execution_mode(o.mode);
  ctx.qlsa.mode = parse_qlsa_error_mode(o.qlsa_error.empty() ? "zero" : o.qlsa_error);
  ctx.nfn_threshold_shift = o.mutate_nfn_threshold;

  std::ofstream trace;
  if (!o.out_trace.empty()) {
    trace.open(o.out_trace);
    require(trace.good(), ErrorCode::InvalidArgument, "cannot write " + o.out_trace);
    write_trace_header(trace);
  }
  const QuantumRunResult res = solve_quantum(lp.inst, basis, o.params, ctx, o.max_iters, [&](const TraceRecord& r) {
    if (trace.is_open()) write_trace_row(trace, r);
  });

  std::optional<double> classical;
  const ClassicalResult cr = solve_classical(lp.inst, basis);
  if (cr.status == ClassicalStatus::Optimal) classical = cr.objective;

  if (!o.out_summary.empty()) {
    RunMeta meta{o.instance, ctx.mode, ctx.qlsa.mode, o.seed,
                 o.max_iters ? o.max_iters : 50 * (lp.inst.m() + lp.inst.n())};
    std::ofstream out(o.out_summary);
    require(out.good(), ErrorCode::InvalidArgument, "cannot write " + o.out_summary);
    out << summary_json(res, o.params, meta, classical).dump(2) << '\n';
  }

  std::printf("status: %s\n", to_string(res.status));
  if (res.status == OutcomeTag::Failure) std::printf("failure: %s\n", to_string(res.failure));
  std::printf("iterations: %zu\n", res.iterations);
  std::printf("basis: %s\n", join(res.basis).c_str());
  std::printf("objective: %.12g\n", res.objective);
  if (classical) std::printf("classical objective: %.12g\n", *classical);
  std::printf("pab queries: %llu, grover iterations: %llu, ae repetitions: %llu\n",
              static_cast<unsigned long long>(res.stats.pab_queries),
              static_cast<unsigned long long>(res.stats.grover_iterations),
              static_cast<unsigned long long>(res.stats.ae_repetitions));
  return res.status == OutcomeTag::Failure ? kExitFailure : kExitOk;
}

int cmd_classical(const Options& o) {
  const LoadedLp lp = load_lp(o.instance);
  const std::vector<std::size_t> basis = start_basis(o, lp);
  ClassicalOptions opts;
  opts.seed = o.seed;
  opts.max_pivots = o.max_iters;
  const ClassicalResult res = solve_classical(lp.inst, basis, opts);
  for (std::size_t i = 0; i < res.reports.size(); ++i) {
    const ClassicalPivotReport& r = res.reports[i];
    if (i >= res.pivots) {
      std::printf("step %zu: enter %zu, no positive direction entry, eligible %zu\n", i, r.entering, r.eligible.size());
      continue;
    }
    std::printf("pivot %zu: enter %zu, leave row %zu (column %zu), ratio %.12g, eligible %zu%s\n", i, r.entering,
                r.leaving_row, r.leaving_column, r.ratio, r.eligible.size(), r.bland ? ", bland" : "");
  }
  switch (res.status) {
    case ClassicalStatus::Optimal:
      std::printf("status: optimal\npivots: %zu\nbasis: %s\nobjective: %.12g\n", res.pivots, join(res.basis).c_str(),
                  res.objective);
      return kExitOk;
    case ClassicalStatus::Unbounded:
      std::printf("status: unbounded\npivots: %zu\nentering column: %zu\n", res.pivots, res.unbounded_column.value_or(0));
      return kExitOk;
    case ClassicalStatus::IterationCap:
      std::printf("status: iteration_cap\npivots: %zu\n", res.pivots);
      return kExitFailure;
  }
  return kExitFailure;
}

int cmd_analyze(const Options& o) {
  o.params.validate();
  const LoadedLp lp = load_lp(o.instance);
  const std::vector<std::size_t> basis = start_basis(o, lp);
  CostReport report = cost_report(lp.inst, basis, o.params);
  if (!o.trace.empty()) report.measured = read_trace_stats(o.trace);
  const Json j = cost_report_json(report);
  if (const auto problem = validate_cost_report(j)) throw Error(ErrorCode::InvalidArgument, "report: " + *problem);
  std::cout << cost_report_table(report);
  if (!o.out_report.empty()) {
    std::ofstream out(o.out_report);
    require(out.good(), ErrorCode::InvalidArgument, "cannot write " + o.out_report);
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const Options& o) {
  o.params.validate();
  VerifyConfig cfg;
  cfg.seed = o.seed;
  cfg.mode = parse_execution_mode(o.mode);
  cfg.qlsa = parse_qlsa_error_mode(o.qlsa_error.empty() ? "worst" : o.qlsa_error);
  cfg.repetitions = o.params.repetitions;
  cfg.sign_epsilons = {o.params.epsilon};
  cfg.delta = o.params.delta;
  cfg.alpha = o.params.alpha;
  cfg.nfn_threshold_shift = o.mutate_nfn_threshold;
  const VerifyOracles oracles = VerifyOracles::library();

  using Suite = SuiteResult (*)(const VerifyConfig&, const VerifyOracles&);
  const std::vector<std::pair<std::string, Suite>> all = {
      {"1", suite_phase_estimation}, {"2", suite_sign_estimation}, {"3", suite_pricing},
      {"4", suite_ratio_test},       {"5", suite_unbounded},       {"6", suite_norm_estimation},
      {"7", suite_scaling},          {"8", suite_end_to_end},      {"9", suite_adversarial},
      {"10", suite_column_split}};
  bool ok = true;
  for (const auto& [id, suite] : all) {
    if (!o.suites.empty() && std::find(o.suites.begin(), o.suites.end(), id) == o.suites.end()) continue;
    const SuiteResult r = suite(cfg, oracles);
    std::printf("[%s] %-2s %s\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.name.c_str());
    for (const std::string& d : r.details) std::printf("      %s\n", d.c_str());
    if (!r.passed && r.counterexample_seed)
      std::printf("      counterexample seed: %llu\n", static_cast<unsigned long long>(*r.counterexample_seed));
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated quantum simplex method"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "run the quantum-simulated simplex loop");
  add_common(solve, o);
  solve->add_option("--out-trace", o.out_trace, "per-iteration trace CSV");
  solve->add_option("--out-summary", o.out_summary, "run summary JSON");
  solve->add_option("--mutate-nfn-threshold", o.mutate_nfn_threshold)->group("");

  auto* classical = app.add_subcommand("classical", "run the classical reference simplex");
  add_common(classical, o);

  auto* analyze = app.add_subcommand("analyze", "cost-model report for an instance");
  add_common(analyze, o);
  analyze->add_option("--trace", o.trace, "trace CSV to compare measured counts against");
  analyze->add_option("--out-report", o.out_report, "cost report JSON");

  auto* verify = app.add_subcommand("verify", "run the property suites");
  add_common(verify, o, false);
  verify->add_option("--suite", o.suites, "suite ids to run (default all)")->delimiter(',');
  verify->add_option("--mutate-nfn-threshold", o.mutate_nfn_threshold)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(o);
    if (classical->parsed()) return cmd_classical(o);
    if (analyze->parsed()) return cmd_analyze(o);
    return cmd_verify(o);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
}
