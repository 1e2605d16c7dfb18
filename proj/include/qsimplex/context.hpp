#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "qsimplex/params.hpp"
#include "qsimplex/primitives.hpp"
#include "qsimplex/statevector.hpp"

namespace qsimplex {

/// Mutable state owned by one subroutine run: RNG, counters, caches.
struct SubroutineContext {
  ExecutionMode mode = ExecutionMode::Analytic;
  QlsaErrorSpec qlsa;
  std::mt19937_64 rng;
  QueryStats stats;
  std::size_t repetitions = 15;
  /// Test hook: added to the NFN decision threshold.
  double nfn_threshold_shift = 0.0;
  AeCache ae_cache;

  explicit SubroutineContext(std::uint64_t seed = 0) : rng(seed) {}
};

}  // namespace qsimplex
