#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qsimplex/cost_model.hpp"
#include "qsimplex/error.hpp"
#include "qsimplex/lp.hpp"
#include "qsimplex/params.hpp"
#include "qsimplex/simplex_iter.hpp"

namespace qsimplex {

using Json = nlohmann::ordered_json;

/// LP plus an optional start basis as read from disk.
struct LoadedLp {
  LpInstance inst;
  std::optional<std::vector<std::size_t>> basis;
};

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline const Json& field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline Eigen::VectorXd vector_field(const Json& j, const char* key, std::size_t size) {
  const Json& a = field(j, key);
  require(a.is_array(), ErrorCode::ParseError, std::string("'") + key + "' must be an array");
  require(a.size() == size, ErrorCode::ParseError,
          std::string("'") + key + "' has " + std::to_string(a.size()) + " entries, expected " + std::to_string(size));
  Eigen::VectorXd v(static_cast<Eigen::Index>(size));
  for (std::size_t i = 0; i < size; ++i) {
    require(a[i].is_number(), ErrorCode::ParseError, std::string("'") + key + "[" + std::to_string(i) + "]' is not a number");
    v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  }
  return v;
}

inline std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  require(v.is_number_unsigned() && v.get<std::size_t>() > 0, ErrorCode::ParseError,
          std::string("'") + key + "' must be a positive integer");
  return v.get<std::size_t>();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Parses the LP JSON format: {"m", "n", "A": {"cols": [[[row, value], ...],
/// ...]}, "b", "c", optional "basis"}; all indices 0-based.
inline LoadedLp parse_lp_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "malformed JSON at " + detail::line_column(text, e.byte > 0 ? e.byte - 1 : 0) +
                                           ": " + e.what());
  }
  const std::size_t m = detail::size_field(j, "m");
  const std::size_t n = detail::size_field(j, "n");
  const Json& cols = detail::field(detail::field(j, "A"), "cols");
  require(cols.is_array() && cols.size() == n, ErrorCode::ParseError, "'A.cols' must hold one entry per column");
  std::vector<SparseMatrix::Column> columns(n);
  for (std::size_t k = 0; k < n; ++k) {
    require(cols[k].is_array(), ErrorCode::ParseError, "'A.cols[" + std::to_string(k) + "]' must be an array");
    for (const Json& e : cols[k]) {
      require(e.is_array() && e.size() == 2 && e[0].is_number_unsigned() && e[1].is_number(), ErrorCode::ParseError,
              "'A.cols[" + std::to_string(k) + "]' entries must be [row, value]");
      const auto row = e[0].get<std::size_t>();
      require(row < m, ErrorCode::ParseError,
              "row " + std::to_string(row) + " out of range in column " + std::to_string(k));
      columns[k].emplace_back(row, e[1].get<double>());
    }
  }
  LoadedLp out{LpInstance::make(SparseMatrix::from_columns(m, columns), detail::vector_field(j, "b", m),
                                detail::vector_field(j, "c", n)),
               std::nullopt};
  if (j.contains("basis")) {
    const Json& b = j.at("basis");
    require(b.is_array() && b.size() == m, ErrorCode::ParseError, "'basis' must list m column indices");
    std::vector<std::size_t> basis;
    for (const Json& e : b) {
      require(e.is_number_unsigned(), ErrorCode::ParseError, "'basis' entries must be column indices");
      basis.push_back(e.get<std::size_t>());
    }
    out.basis = basis;
  }
  return out;
}

inline Json lp_to_json(const LpInstance& inst, const std::optional<std::vector<std::size_t>>& basis = std::nullopt) {
  Json j;
  j["m"] = inst.m();
  j["n"] = inst.n();
  Json cols = Json::array();
  for (std::size_t k = 0; k < inst.n(); ++k) {
    Json col = Json::array();
    const auto rows = inst.A.column_rows(k);
    const auto vals = inst.A.column_values(k);
    for (std::size_t i = 0; i < rows.size(); ++i) col.push_back({rows[i], vals[i]});
    cols.push_back(col);
  }
  j["A"] = {{"cols", cols}};
  j["b"] = std::vector<double>(inst.b.begin(), inst.b.end());
  j["c"] = std::vector<double>(inst.c.begin(), inst.c.end());
  if (basis) j["basis"] = *basis;
  return j;
}

/// Fixed-MPS subset: NAME, ROWS (one N row, E rows), COLUMNS, RHS, ENDATA.
/// Fields are whitespace separated; RHS entries on the objective row are
/// ignored.
inline LoadedLp parse_mps(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  enum class Section { None, Rows, Columns, Rhs, Done } section = Section::None;
  std::string objective;
  std::map<std::string, std::size_t> rows;
  std::map<std::string, std::size_t> col_index;
  std::vector<SparseMatrix::Column> columns;
  std::vector<double> costs;
  std::map<std::size_t, double> rhs;
  const auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::ParseError, "MPS line " + std::to_string(line_no) + ": " + msg);
  };
  const auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) fail("bad number '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad number '" + s + "'");
    }
    return 0.0;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      if (tok[0] == "NAME") continue;
      if (tok[0] == "ROWS") section = Section::Rows;
      else if (tok[0] == "COLUMNS") section = Section::Columns;
      else if (tok[0] == "RHS") section = Section::Rhs;
      else if (tok[0] == "ENDATA") { section = Section::Done; break; }
      else fail("unsupported section '" + tok[0] + "'");
      continue;
    }
    switch (section) {
      case Section::Rows:
        if (tok.size() != 2) fail("ROWS entry needs a type and a name");
        if (tok[0] == "N") {
          if (!objective.empty()) fail("more than one objective row");
          objective = tok[1];
        } else if (tok[0] == "E") {
          if (rows.count(tok[1])) fail("duplicate row '" + tok[1] + "'");
          const std::size_t next = rows.size();
          rows[tok[1]] = next;
        } else {
          fail("only equality rows are supported, got type '" + tok[0] + "'");
        }
        break;
      case Section::Columns: {
        if (tok.size() != 3 && tok.size() != 5) fail("COLUMNS entry needs a column and one or two (row, value) pairs");
        auto it = col_index.find(tok[0]);
        if (it == col_index.end()) {
          it = col_index.emplace(tok[0], columns.size()).first;
          columns.emplace_back();
          costs.push_back(0.0);
        }
        for (std::size_t p = 1; p + 1 < tok.size(); p += 2) {
          const double v = number(tok[p + 1]);
          if (tok[p] == objective) {
            costs[it->second] += v;
          } else {
            const auto r = rows.find(tok[p]);
            if (r == rows.end()) fail("unknown row '" + tok[p] + "'");
            columns[it->second].emplace_back(r->second, v);
          }
        }
        break;
      }
      case Section::Rhs:
        if (tok.size() != 3 && tok.size() != 5) fail("RHS entry needs a set name and one or two (row, value) pairs");
        for (std::size_t p = 1; p + 1 < tok.size(); p += 2) {
          if (tok[p] == objective) continue;
          const auto r = rows.find(tok[p]);
          if (r == rows.end()) fail("unknown row '" + tok[p] + "'");
          rhs[r->second] = number(tok[p + 1]);
        }
        break;
      default:
        fail("data outside a section");
    }
  }
  if (section != Section::Done) fail("missing ENDATA");
  require(!rows.empty() && !columns.empty(), ErrorCode::ParseError, "MPS file has no rows or no columns");
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows.size()));
  for (const auto& [r, v] : rhs) b(static_cast<Eigen::Index>(r)) = v;
  Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(costs.data(), static_cast<Eigen::Index>(costs.size()));
  return {LpInstance::make(SparseMatrix::from_columns(rows.size(), columns), b, c), std::nullopt};
}

/// Loads JSON, or MPS when the path ends in .mps.
inline LoadedLp load_lp(const std::string& path) {
  const std::string text = detail::read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".mps") == 0) return parse_mps(text);
  return parse_lp_json(text);
}

// ---------------------------------------------------------------------------
// Trace CSV

inline constexpr const char* kTraceColumns[] = {
    "iteration",       "basis",           "outcome",          "failure",
    "entering",        "leaving_row",     "leaving_column",   "kappa",
    "cost_degenerate", "numerically_optimal", "pricing_fallback", "entering_rho",
    "leaving_ratio",   "u_calls",         "controlled_u_calls", "qlsa_invocations",
    "pab_queries",     "pb_queries",      "grover_iterations", "ae_repetitions",
    "basic_gates",     "classical_min_rho", "classical_optimal", "classical_unbounded_entering",
    "classical_min_ratio", "objective"};

inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline void write_trace_header(std::ostream& os) {
  bool first = true;
  for (const char* c : kTraceColumns) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  os << '\n';
}

/// One CSV row; basis indices are space separated. Wall-clock timings are
/// kept out so equal seeds give byte-identical traces.
inline void write_trace_row(std::ostream& os, const TraceRecord& r) {
  const IterationOutcome& o = r.outcome;
  const bool moved = o.tag == OutcomeTag::Pivot || o.tag == OutcomeTag::Unbounded;
  std::string basis;
  for (std::size_t j = 0; j < r.basis.size(); ++j) basis += (j ? " " : "") + std::to_string(r.basis[j]);
  const auto opt = [&](bool has, std::size_t v) { return has ? std::to_string(v) : std::string(); };
  os << r.iteration << ',' << basis << ',' << to_string(o.tag) << ',' << to_string(o.failure) << ','
     << opt(moved || o.tag == OutcomeTag::Failure, o.entering) << ',' << opt(o.tag == OutcomeTag::Pivot, o.leaving_row)
     << ',' << opt(o.tag == OutcomeTag::Pivot, o.leaving_column) << ',' << format_double(o.kappa) << ','
     << o.cost_degenerate << ',' << o.numerically_optimal << ',' << o.pricing_fallback << ','
     << format_double(o.entering_rho) << ',' << format_double(o.leaving_ratio) << ',' << o.stats.u_calls << ','
     << o.stats.controlled_u_calls << ',' << o.stats.qlsa_invocations << ',' << o.stats.pab_queries << ','
     << o.stats.pb_queries << ',' << o.stats.grover_iterations << ',' << o.stats.ae_repetitions << ','
     << o.stats.basic_gates << ',' << format_double(r.classical_min_rho) << ',' << r.classical_optimal << ','
     << r.classical_unbounded_entering << ',' << format_double(r.classical_min_ratio) << ','
     << format_double(r.objective) << '\n';
}

/// Per-iteration stats read back from a trace CSV.
struct TraceSummary {
  std::size_t iterations = 0;
  QueryStats stats;
};

inline TraceSummary read_trace_stats(const std::string& path) {
  std::istringstream in(detail::read_file(path));
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::ParseError, "empty trace file");
  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    for (std::string f; std::getline(hs, f, ',');) header.push_back(f);
  }
  require(header.size() == std::size(kTraceColumns), ErrorCode::ParseError, "trace header has the wrong column count");
  for (std::size_t i = 0; i < header.size(); ++i)
    require(header[i] == kTraceColumns[i], ErrorCode::ParseError, "unexpected trace column '" + header[i] + "'");
  const auto col = [&](const char* name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return header.size();
  };
  TraceSummary out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string s; std::getline(ls, s, ',');) f.push_back(s);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    require(f.size() == header.size(), ErrorCode::ParseError, "trace line " + std::to_string(line_no) + " has the wrong field count");
    const auto u = [&](const char* name) {
      try {
        return static_cast<std::uint64_t>(std::stoull(f[col(name)]));
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "trace line " + std::to_string(line_no) + ": bad value for " + name);
      }
    };
    QueryStats s;
    s.u_calls = u("u_calls");
    s.controlled_u_calls = u("controlled_u_calls");
    s.qlsa_invocations = u("qlsa_invocations");
    s.pab_queries = u("pab_queries");
    s.pb_queries = u("pb_queries");
    s.grover_iterations = u("grover_iterations");
    s.ae_repetitions = u("ae_repetitions");
    s.basic_gates = u("basic_gates");
    out.stats += s;
    ++out.iterations;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Summary JSON

inline constexpr int kSummarySchemaVersion = 1;

inline Json stats_json(const QueryStats& s) {
  return {{"u_calls", s.u_calls},
          {"controlled_u_calls", s.controlled_u_calls},
          {"qlsa_invocations", s.qlsa_invocations},
          {"pab_queries", s.pab_queries},
          {"pb_queries", s.pb_queries},
          {"grover_iterations", s.grover_iterations},
          {"ae_repetitions", s.ae_repetitions},
          {"basic_gates", s.basic_gates}};
}

inline Json params_json(const PrecisionParams& p) {
  return {{"epsilon", p.epsilon}, {"delta", p.delta},         {"t", p.t},
          {"eps_prime", p.eps_prime}, {"repetitions", p.repetitions}, {"alpha", p.alpha}};
}

struct RunMeta {
  std::string instance;
  ExecutionMode mode = ExecutionMode::Analytic;
  QlsaErrorMode qlsa_error = QlsaErrorMode::Zero;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 0;
};

inline Json summary_json(const QuantumRunResult& r, const PrecisionParams& p, const RunMeta& meta,
                         std::optional<double> classical_objective) {
  SubroutineTimings t;
  for (const TraceRecord& rec : r.trace) {
    t.normalize_ms += rec.outcome.timings.normalize_ms;
    t.is_optimal_ms += rec.outcome.timings.is_optimal_ms;
    t.find_column_ms += rec.outcome.timings.find_column_ms;
    t.is_unbounded_ms += rec.outcome.timings.is_unbounded_ms;
    t.find_row_ms += rec.outcome.timings.find_row_ms;
  }
  Json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["instance"] = meta.instance;
  j["mode"] = std::string(to_string(meta.mode));
  j["qlsa_error"] = std::string(to_string(meta.qlsa_error));
  j["seed"] = meta.seed;
  j["max_iterations"] = meta.max_iterations;
  j["params"] = params_json(p);
  j["status"] = to_string(r.status);
  j["failure"] = to_string(r.failure);
  j["objective"] = r.objective;
  j["iterations"] = r.iterations;
  j["basis"] = r.basis;
  j["stats"] = stats_json(r.stats);
  j["classical_objective"] = classical_objective ? Json(*classical_objective) : Json(nullptr);
  j["timings_ms"] = {{"normalize", t.normalize_ms},
                     {"is_optimal", t.is_optimal_ms},
                     {"find_column", t.find_column_ms},
                     {"is_unbounded", t.is_unbounded_ms},
                     {"find_row", t.find_row_ms}};
  return j;
}

// ---------------------------------------------------------------------------
// Cost report

inline constexpr int kCostReportSchemaVersion = 1;

struct FormulaCost {
  std::string name;
  std::string formula;
  /// Unit constants, polylogs evaluated as 1; empty when not applicable.
  std::optional<double> value;
};

struct CostReport {
  std::size_t m = 0;
  std::size_t n = 0;
  double d_c = 0.0;
  double d = 0.0;
  double kappa = 1.0;
  double mu_AB = 0.0;
  double AN_frobenius = 0.0;
  double epsilon = 0.1;
  double delta = 0.1;
  double t = 100.0;
  SplitComparison split;
  std::vector<FormulaCost> formulas;
  std::optional<TraceSummary> measured;
};

/// Evaluates every formula variant from instance statistics.
inline CostReport cost_report(std::size_t m, std::size_t n, double d_c, double d, double kappa, double mu_AB,
                              double AN_frobenius, const PrecisionParams& p) {
  CostReport r;
  r.m = m;
  r.n = n;
  r.d_c = d_c;
  r.d = d;
  r.kappa = kappa;
  r.mu_AB = mu_AB;
  r.AN_frobenius = AN_frobenius;
  r.epsilon = p.epsilon;
  r.delta = p.delta;
  r.t = p.t;
  const auto M = static_cast<double>(m);
  const auto N = static_cast<double>(n);
  r.split = compare_split(M, N, d_c, d, kappa, p.epsilon);
  const QlsaCost q = qlsa_cost(d, kappa, p.epsilon, M);
  r.formulas = {
      {"classical_pricing", "d_c^0.7 m^1.9 + m^2 + d_c n", classical_pricing_cost(M, N, d_c)},
      {"quantum_pricing_no_split", "(1/eps) sqrt(n) (kappa d_c n + kappa^2 d^2 m)",
       pricing_cost_no_split(M, N, d_c, d, kappa, p.epsilon)},
      {"quantum_pricing_split", "(1/eps) kappa^1.5 d sqrt(d_c) n sqrt(m)",
       r.split.threshold_holds ? std::optional<double>(r.split.split_closed_form) : std::nullopt},
      {"quantum_pricing_split_blocks", "(h/eps) sqrt(n/h) (kappa d_c n/h + kappa^2 d^2 m)", r.split.split_blocks},
      {"quantum_pricing_qram", "(1/eps) kappa^2 sqrt(m n)", pricing_cost_qram(M, N, kappa, p.epsilon)},
      {"quantum_ratio_test", "(t/delta) kappa^2 d^2 m^1.5",
       quantum_ratio_test_cost(M, d, kappa, p.delta, p.t, false, false)},
      {"quantum_ratio_test_qram", "(t/delta) kappa^2 m", quantum_ratio_test_cost(M, d, kappa, p.delta, p.t, true, false)},
      {"quantum_unboundedness_test", "(1/delta) kappa^2 d^2 m^1.5",
       quantum_ratio_test_cost(M, d, kappa, p.delta, p.t, false, true)},
      {"qlsa_pab_queries", "d kappa^2 log^2.5(kappa/eps)", static_cast<double>(q.pab_queries)},
      {"qlsa_pb_queries", "kappa sqrt(log(kappa/eps))", static_cast<double>(q.pb_queries)},
      {"qlsa_gates", "d kappa^2 log^2.5(kappa/eps) (log m + log^2.5(kappa/eps))", static_cast<double>(q.gates)},
      {"qlsa_qram", "mu(A_B) kappa^2", qlsa_cost_qram(mu_AB, kappa)},
      {"qram_update", "m", std::nullopt},
      {"qram_preparation", "d_c n", std::nullopt},
  };
  return r;
}

/// Cost report for an instance at a basis, after normalization.
inline CostReport cost_report(const LpInstance& inst, const std::vector<std::size_t>& basis, const PrecisionParams& p) {
  const BasisState st = normalize(inst, make_basis(inst, basis), p.eps_prime);
  // mu describes the stored entries of A_B, so it is taken before rescaling.
  const double an = st.nonbasic.empty() ? 0.0 : inst.columns_dense(st.nonbasic).norm() * st.matrix_scale;
  return cost_report(inst.m(), inst.n(), static_cast<double>(std::max<std::size_t>(st.d_c, 1)),
                     static_cast<double>(std::max<std::size_t>(st.d, 1)), st.kappa,
                     mu(basis_matrix(inst, st.basis)), an, p);
}

inline Json cost_report_json(const CostReport& r) {
  Json j;
  j["schema_version"] = kCostReportSchemaVersion;
  j["instance"] = {{"m", r.m},         {"n", r.n},         {"d_c", r.d_c},
                   {"d", r.d},         {"kappa", r.kappa}, {"mu_AB", r.mu_AB},
                   {"AN_frobenius", r.AN_frobenius}};
  j["params"] = {{"epsilon", r.epsilon}, {"delta", r.delta}, {"t", r.t}};
  j["split"] = {{"ratio_x", r.split.ratio_x},
                {"threshold_holds", r.split.threshold_holds},
                {"blocks", r.split.blocks ? Json(*r.split.blocks) : Json(nullptr)},
                {"split_cheaper", r.split.split_cheaper}};
  Json f = Json::array();
  for (const FormulaCost& c : r.formulas)
    f.push_back({{"name", c.name}, {"formula", c.formula}, {"value", c.value ? Json(*c.value) : Json(nullptr)}});
  j["formulas"] = f;
  if (r.measured) {
    const double it = static_cast<double>(std::max<std::size_t>(r.measured->iterations, 1));
    const double no_split = r.formulas[1].value.value_or(0.0);
    j["measured"] = {{"iterations", r.measured->iterations},
                     {"stats", stats_json(r.measured->stats)},
                     {"pab_queries_per_iteration", static_cast<double>(r.measured->stats.pab_queries) / it},
                     {"predicted_pricing_per_iteration", no_split},
                     {"measured_over_predicted", static_cast<double>(r.measured->stats.pab_queries) / it / no_split}};
  } else {
    j["measured"] = nullptr;
  }
  return j;
}

/// Structural check of a cost-report document; returns the first problem.
inline std::optional<std::string> validate_cost_report(const Json& j) {
  if (!j.is_object()) return "report is not an object";
  if (!j.contains("schema_version") || j["schema_version"] != kCostReportSchemaVersion) return "bad schema_version";
  if (!j.contains("instance") || !j["instance"].is_object()) return "missing instance";
  for (const char* k : {"m", "n"})
    if (!j["instance"].contains(k) || !j["instance"][k].is_number_unsigned()) return std::string("instance.") + k;
  for (const char* k : {"d_c", "d", "kappa", "mu_AB", "AN_frobenius"})
    if (!j["instance"].contains(k) || !j["instance"][k].is_number()) return std::string("instance.") + k;
  if (!j.contains("params") || !j["params"].is_object()) return "missing params";
  for (const char* k : {"epsilon", "delta", "t"})
    if (!j["params"].contains(k) || !j["params"][k].is_number()) return std::string("params.") + k;
  if (!j.contains("split") || !j["split"].is_object()) return "missing split";
  if (!j["split"].contains("threshold_holds") || !j["split"]["threshold_holds"].is_boolean()) return "split.threshold_holds";
  if (!j["split"].contains("split_cheaper") || !j["split"]["split_cheaper"].is_boolean()) return "split.split_cheaper";
  if (!j.contains("formulas") || !j["formulas"].is_array() || j["formulas"].empty()) return "missing formulas";
  for (const Json& f : j["formulas"]) {
    if (!f.is_object() || !f.contains("name") || !f["name"].is_string()) return "formula without name";
    if (!f.contains("formula") || !f["formula"].is_string()) return "formula without expression";
    if (!f.contains("value") || !(f["value"].is_number() || f["value"].is_null())) return "formula without value";
  }
  if (!j.contains("measured")) return "missing measured";
  return std::nullopt;
}

/// Aligned text table: name, value, formula.
inline std::string cost_report_table(const CostReport& r) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "m=%zu n=%zu d_c=%g d=%g kappa=%.6g mu(A_B)=%.6g ||A_N||_F=%.6g\n", r.m, r.n, r.d_c,
                r.d, r.kappa, r.mu_AB, r.AN_frobenius);
  os << buf;
  std::snprintf(buf, sizeof buf, "split ratio x=%.6g threshold=%s blocks=%s split_cheaper=%s\n", r.split.ratio_x,
                r.split.threshold_holds ? "holds" : "fails",
                r.split.blocks ? std::to_string(*r.split.blocks).c_str() : "-", r.split.split_cheaper ? "yes" : "no");
  os << buf;
  std::snprintf(buf, sizeof buf, "%-30s %16s  %s\n", "formula", "value", "expression");
  os << buf;
  for (const FormulaCost& f : r.formulas) {
    std::snprintf(buf, sizeof buf, "%-30s %16s  %s\n", f.name.c_str(),
                  f.value ? short_number(*f.value).c_str() : "symbolic", f.formula.c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace qsimplex
