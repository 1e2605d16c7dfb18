#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/error.hpp"

// Complexity formulas evaluated with unit constants, polylog factors set to
// 1 and o(1) exponents set to 0.

namespace qsimplex {

/// d_c^0.7 m^1.9 + m^2 + d_c n.
inline double classical_pricing_cost(double m, double n, double d_c) {
  require(m > 0 && n > 0 && d_c > 0, ErrorCode::InvalidArgument, "cost inputs must be positive");
  return std::pow(d_c, 0.7) * std::pow(m, 1.9) + m * m + d_c * n;
}

/// x = n d_c / (kappa d^2 m); splitting into h blocks pays off iff x >= 2.
inline double split_ratio(double n, double m, double d_c, double d, double kappa) {
  return n * d_c / (kappa * d * d * m);
}

inline bool split_threshold_holds(double n, double m, double d_c, double d, double kappa) {
  return split_ratio(n, m, d_c, d, kappa) >= 2.0 - 1e-9;
}

/// sqrt(n) (kappa d_c n + kappa^2 d^2 m) / eps.
inline double pricing_cost_no_split(double m, double n, double d_c, double d, double kappa, double eps) {
  return std::sqrt(n) * (kappa * d_c * n + kappa * kappa * d * d * m) / eps;
}

/// kappa^1.5 d sqrt(d_c) n sqrt(m) / eps (the optimized-h closed form).
inline double pricing_cost_split(double m, double n, double d_c, double d, double kappa, double eps) {
  return std::pow(kappa, 1.5) * d * std::sqrt(d_c) * n * std::sqrt(m) / eps;
}

/// Cost with exactly h blocks of n/h columns: (h/eps) sqrt(n/h) (kappa d_c n/h + kappa^2 d^2 m).
inline double pricing_cost_blocks(double m, double n, double d_c, double d, double kappa, double eps, double h) {
  require(h >= 1, ErrorCode::InvalidArgument, "block count must be >= 1");
  return (h / eps) * std::sqrt(n / h) * (kappa * d_c * n / h + kappa * kappa * d * d * m);
}

/// kappa^2 sqrt(m n) / eps.
inline double pricing_cost_qram(double m, double n, double kappa, double eps) {
  return kappa * kappa * std::sqrt(m * n) / eps;
}

inline double quantum_pricing_cost(double m, double n, double d_c, double d, double kappa, double eps, bool qram,
                                   bool split) {
  require(m > 0 && n > 0 && d_c > 0 && d > 0 && kappa >= 1 && eps > 0, ErrorCode::InvalidArgument,
          "pricing cost inputs out of range");
  if (qram) return pricing_cost_qram(m, n, kappa, eps);
  if (split) {
    require(split_threshold_holds(n, m, d_c, d, kappa), ErrorCode::ThresholdViolation,
            "column splitting requires n/m >= 2 kappa d^2 / d_c");
    return pricing_cost_split(m, n, d_c, d, kappa, eps);
  }
  return pricing_cost_no_split(m, n, d_c, d, kappa, eps);
}

/// (t/delta) kappa^2 d^2 m^1.5, or (t/delta) kappa^2 m with qRAM. The
/// unboundedness check drops the factor t.
inline double quantum_ratio_test_cost(double m, double d, double kappa, double delta, double t, bool qram,
                                      bool unboundedness_only = false) {
  require(m > 0 && d > 0 && kappa >= 1 && delta > 0 && t >= 1, ErrorCode::InvalidArgument,
          "ratio-test cost inputs out of range");
  const double lead = (unboundedness_only ? 1.0 : t) / delta * kappa * kappa;
  return qram ? lead * m : lead * d * d * std::pow(m, 1.5);
}

struct QlsaCost {
  std::uint64_t pab_queries = 0;
  std::uint64_t pb_queries = 0;
  std::uint64_t gates = 0;
  double log_term = 1.0;
};

/// L = max(1, log2(kappa/eps)); P_AB: d kappa^2 L^2.5; P_b: kappa sqrt(L);
/// gates: d kappa^2 L^2.5 (log2 m + L^2.5).
inline QlsaCost qlsa_cost(double d, double kappa, double eps, double m) {
  require(d >= 1 && kappa >= 1 && eps > 0 && m >= 1, ErrorCode::InvalidArgument, "QLSA cost inputs out of range");
  QlsaCost c;
  c.log_term = std::max(1.0, std::log2(kappa / eps));
  const double l25 = std::pow(c.log_term, 2.5);
  const double q = d * kappa * kappa * l25;
  c.pab_queries = static_cast<std::uint64_t>(std::ceil(q - 1e-9));
  c.pb_queries = static_cast<std::uint64_t>(std::ceil(kappa * std::sqrt(c.log_term) - 1e-9));
  c.gates = static_cast<std::uint64_t>(std::ceil(q * (std::log2(m) + l25) - 1e-9));
  return c;
}

/// Block-encoding variant: mu(A_B) kappa^2.
inline double qlsa_cost_qram(double mu_value, double kappa) { return mu_value * kappa * kappa; }

/// s_p(A) = max_i sum_j |A_ij|^p over the nonzero entries of row i.
inline double s_p(const Eigen::MatrixXd& A, double p) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (A(i, j) != 0.0) s += std::pow(std::abs(A(i, j)), p);
    best = std::max(best, s);
  }
  return best;
}

/// min(||A||_F, sqrt(s_2p(A) s_2(1-p)(A^T))) at one p.
inline double mu(const Eigen::MatrixXd& A, double p) {
  require(p >= 0.0 && p <= 1.0, ErrorCode::InvalidArgument, "p must lie in [0, 1]");
  const Eigen::MatrixXd At = A.transpose();
  return std::min(A.norm(), std::sqrt(s_p(A, 2.0 * p) * s_p(At, 2.0 * (1.0 - p))));
}

/// mu minimized over p in {0, 0.1, ..., 1}.
inline double mu(const Eigen::MatrixXd& A) {
  double best = A.norm();
  for (int i = 0; i <= 10; ++i) best = std::min(best, mu(A, i / 10.0));
  return best;
}

struct SplitComparison {
  double ratio_x = 0.0;
  bool threshold_holds = false;
  std::optional<std::size_t> blocks;
  double no_split = 0.0;
  double split_closed_form = 0.0;
  std::optional<double> split_blocks;
  bool split_cheaper = false;
};

/// Compares no-split pricing with the integer-h block evaluation.
inline SplitComparison compare_split(double m, double n, double d_c, double d, double kappa, double eps) {
  SplitComparison s;
  s.ratio_x = split_ratio(n, m, d_c, d, kappa);
  s.threshold_holds = split_threshold_holds(n, m, d_c, d, kappa);
  s.no_split = pricing_cost_no_split(m, n, d_c, d, kappa, eps);
  s.split_closed_form = pricing_cost_split(m, n, d_c, d, kappa, eps);
  const auto h = static_cast<std::size_t>(std::floor(s.ratio_x + 1e-9));
  if (h >= 2) {
    s.blocks = h;
    s.split_blocks = pricing_cost_blocks(m, n, d_c, d, kappa, eps, static_cast<double>(h));
    s.split_cheaper = *s.split_blocks < s.no_split;
  }
  return s;
}

}  // namespace qsimplex
