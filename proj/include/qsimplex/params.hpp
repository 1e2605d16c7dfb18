#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "qsimplex/error.hpp"

namespace qsimplex {

/// Analytic: exact outcome distributions from the simulated state.
/// Sampling: full statevector circuits.
/// Both modes draw measurement outcomes from the run's seeded RNG.
enum class ExecutionMode { Analytic, Sampling };

enum class QlsaErrorMode { Zero, Worst, Random };

struct QlsaErrorSpec {
  QlsaErrorMode mode = QlsaErrorMode::Zero;
  /// Probability that the QLSA success flag is set.
  double success_probability = 1.0;
};

struct PrecisionParams {
  double epsilon = 0.1;
  double delta = 0.1;
  double t = 100.0;
  std::size_t repetitions = 15;
  double eps_prime = 1e-4;
  /// Norm-estimation normalization constant; 0 selects kappa.
  double alpha = 0.0;

  void validate() const {
    require(epsilon > 0.0 && epsilon <= 0.5, ErrorCode::InvalidArgument, "epsilon must lie in (0, 1/2]");
    require(delta > 0.0 && delta <= 0.5, ErrorCode::InvalidArgument, "delta must lie in (0, 1/2]");
    require(t >= 1.0 && std::isfinite(t), ErrorCode::InvalidArgument, "t must be >= 1");
    require(repetitions >= 1 && repetitions % 2 == 1, ErrorCode::InvalidArgument,
            "repetition count must be odd and >= 1");
    require(eps_prime > 0.0 && eps_prime < 0.5, ErrorCode::InvalidArgument, "eps' must lie in (0, 1/2)");
    require(alpha == 0.0 || alpha >= 1.0, ErrorCode::InvalidArgument, "alpha must be 0 (auto) or >= 1");
  }
};

inline std::string_view to_string(ExecutionMode m) {
  return m == ExecutionMode::Analytic ? "analytic" : "sampling";
}

inline std::string_view to_string(QlsaErrorMode m) {
  switch (m) {
    case QlsaErrorMode::Zero: return "zero";
    case QlsaErrorMode::Worst: return "worst";
    case QlsaErrorMode::Random: return "random";
  }
  return "zero";
}

inline ExecutionMode parse_execution_mode(std::string_view s) {
  if (s == "analytic") return ExecutionMode::Analytic;
  if (s == "sampling") return ExecutionMode::Sampling;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + std::string(s) + "'");
}

inline QlsaErrorMode parse_qlsa_error_mode(std::string_view s) {
  if (s == "zero") return QlsaErrorMode::Zero;
  if (s == "worst") return QlsaErrorMode::Worst;
  if (s == "random") return QlsaErrorMode::Random;
  throw Error(ErrorCode::InvalidArgument, "unknown QLSA error mode '" + std::string(s) + "'");
}

}  // namespace qsimplex
