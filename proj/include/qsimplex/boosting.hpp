#pragma once

#include <cstddef>
#include <functional>

namespace qsimplex {

/// One repetition of a bounded-error test. `justified` is set when the
/// repetition's probabilistic components all succeeded (accurate estimate,
/// QLSA success), so its value carries the proven guarantee.
struct Vote {
  int value = 0;
  bool justified = false;
};

/// Majority of R votes. `success` is set when some justified vote agrees with
/// the majority, which is the event the boosted guarantee is conditioned on.
struct BoostedDecision {
  int value = 0;
  bool success = false;
  std::size_t ones = 0;
  std::size_t repetitions = 0;
};

inline BoostedDecision majority_vote(std::size_t repetitions, const std::function<Vote()>& vote) {
  BoostedDecision out;
  out.repetitions = repetitions;
  bool justified[2] = {false, false};
  for (std::size_t r = 0; r < repetitions; ++r) {
    const Vote v = vote();
    out.ones += v.value ? 1 : 0;
    justified[v.value ? 1 : 0] |= v.justified;
  }
  out.value = 2 * out.ones > repetitions ? 1 : 0;
  out.success = justified[out.value];
  return out;
}

}  // namespace qsimplex
