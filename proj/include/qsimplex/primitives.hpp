#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "qsimplex/error.hpp"
#include "qsimplex/params.hpp"
#include "qsimplex/statevector.hpp"

namespace qsimplex {

// ---------------------------------------------------------------------------
// Phase estimation

/// Probability that b-qubit phase estimation of phase phi reports y, where
/// delta = y/M - phi: sin^2(pi M delta) / (M^2 sin^2(pi delta)).
inline double pe_kernel(std::size_t M, double delta) {
  const double s = std::sin(std::numbers::pi * delta);
  const double Md = static_cast<double>(M);
  if (std::abs(s) < 1e-12) return 1.0;
  const double num = std::sin(std::numbers::pi * Md * delta);
  return (num * num) / (Md * Md * s * s);
}

/// q accurate bits with failure probability eps_fail need
/// q + ceil(log2(2 + 1/(2 eps_fail))) qubits.
inline std::size_t pe_total_qubits(std::size_t q, double eps_fail) {
  require(eps_fail > 0.0 && eps_fail < 1.0, ErrorCode::InvalidArgument, "failure probability must lie in (0, 1)");
  return q + static_cast<std::size_t>(std::ceil(std::log2(2.0 + 1.0 / (2.0 * eps_fail)) - 1e-12));
}

/// Circular distance between two phases in [0, 1).
inline double phase_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

inline std::vector<double> pe_distribution(double phi, std::size_t bits) {
  const std::size_t M = std::size_t{1} << bits;
  std::vector<double> p(M);
  for (std::size_t y = 0; y < M; ++y)
    p[y] = pe_kernel(M, static_cast<double>(y) / static_cast<double>(M) - phi);
  return p;
}

/// Runs phase estimation of `U` (acting on the work register) on `input`
/// with the counting register built slice by slice: amplitude of |a>|w> is
/// (U^a input)_w / sqrt(M), followed by the inverse QFT on the counting index.
inline std::vector<double> pe_circuit_distribution(const std::function<void(StateVector&)>& U,
                                                   const StateVector& input, std::size_t bits) {
  const std::size_t M = std::size_t{1} << bits;
  const std::size_t dim = input.dim();
  std::vector<std::vector<Complex>> slices(dim, std::vector<Complex>(M));
  StateVector s = input;
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  for (std::size_t a = 0; a < M; ++a) {
    for (std::size_t w = 0; w < dim; ++w) slices[w][a] = s[w] * scale;
    if (a + 1 < M) {
      U(s);
      s.renormalize();
    }
  }
  std::vector<double> p(M, 0.0);
  for (auto& col : slices) {
    inverse_qft(col);
    for (std::size_t y = 0; y < M; ++y) p[y] += std::norm(col[y]);
  }
  return p;
}

struct PhaseEstimation {
  std::vector<double> distribution;
  bool analytic = false;
  double phase = 0.0;  // eigenphase in turns when analytic
};

/// Exact outcome distribution. In analytic mode an eigenstate input uses the
/// closed-form kernel; anything else falls back to the statevector path.
inline PhaseEstimation phase_estimation(const std::function<void(StateVector&)>& U, const StateVector& input,
                                        std::size_t bits, ExecutionMode mode) {
  PhaseEstimation out;
  if (mode == ExecutionMode::Analytic) {
    StateVector v = input;
    U(v);
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) overlap += std::conj(input[i]) * v[i];
    double resid = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) resid += std::norm(v[i] - overlap * input[i]);
    if (std::sqrt(resid) < 1e-10 && std::abs(std::abs(overlap) - 1.0) < 1e-10) {
      double phi = std::arg(overlap) / (2.0 * std::numbers::pi);
      if (phi < 0.0) phi += 1.0;
      out.analytic = true;
      out.phase = phi;
      out.distribution = pe_distribution(phi, bits);
      return out;
    }
  }
  out.distribution = pe_circuit_distribution(U, input, bits);
  return out;
}

// ---------------------------------------------------------------------------
// Amplitude estimation

/// theta in [0, 1/2] with sin(pi theta) = |amplitude|.
inline double ae_theta(double amplitude) {
  return std::asin(std::clamp(std::abs(amplitude), 0.0, 1.0)) / std::numbers::pi;
}

/// Accuracy bits q = ceil(log2(1/precision)); total register q + 2, which
/// gives failure probability 1/4 by the phase-estimation bound.
inline std::size_t ae_accuracy_bits(double precision) {
  require(precision > 0.0 && precision < 1.0, ErrorCode::InvalidArgument, "AE precision must lie in (0, 1)");
  return static_cast<std::size_t>(std::max(0.0, std::ceil(std::log2(1.0 / precision) - 1e-12)));
}
inline std::size_t ae_total_bits(double precision) { return ae_accuracy_bits(precision) + 2; }

/// min(y/M, 1 - y/M).
inline double ae_fold(std::size_t y, std::size_t bits) {
  const double f = static_cast<double>(y) / static_cast<double>(std::size_t{1} << bits);
  return std::min(f, 1.0 - f);
}

struct AeDistribution {
  std::size_t bits = 0;
  double theta = 0.0;
  std::vector<double> probs;
  std::vector<double> cdf;

  void finalize() {
    cdf.resize(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) cdf[i] = (acc += probs[i]);
  }
};

/// Exact AE output law: P(y) = F(y/M - theta)/2 + F(y/M + theta)/2.
inline AeDistribution ae_distribution_analytic(double amplitude, std::size_t bits) {
  AeDistribution d;
  d.bits = bits;
  d.theta = ae_theta(amplitude);
  const std::size_t M = std::size_t{1} << bits;
  d.probs.resize(M);
  for (std::size_t y = 0; y < M; ++y) {
    const double f = static_cast<double>(y) / static_cast<double>(M);
    d.probs[y] = 0.5 * pe_kernel(M, f - d.theta) + 0.5 * pe_kernel(M, f + d.theta);
  }
  d.finalize();
  return d;
}

/// Statevector AE of the good subspace of A|0>, with the Grover iterate
/// Q = -A S_0 A^dagger S_chi applied slice by slice.
inline AeDistribution ae_distribution_circuit(const Circuit& A, const std::vector<char>& good, std::size_t bits) {
  StateVector init(A.qubits());
  A.apply(init);
  double good_mass = 0.0;
  for (std::size_t i = 0; i < init.dim(); ++i)
    if (good[i]) good_mass += std::norm(init[i]);
  const Circuit Ainv = A.inverse();
  auto Q = [&](StateVector& s) {
    for (std::size_t i = 0; i < s.dim(); ++i)
      if (good[i]) s[i] = -s[i];
    Ainv.apply(s);
    s[0] = -s[0];
    A.apply(s);
    for (auto& a : s.data()) a = -a;
  };
  AeDistribution d;
  d.bits = bits;
  d.theta = ae_theta(std::sqrt(good_mass));
  d.probs = pe_circuit_distribution(Q, init, bits);
  d.finalize();
  return d;
}

/// Whether a circuit AE over `work_qubits` with `bits` counting qubits fits
/// the simulator's memory budget.
inline bool ae_circuit_feasible(std::size_t bits, std::size_t work_qubits) {
  return bits + work_qubits <= 22;
}

struct AeOutcome {
  std::size_t y = 0;
  double folded = 0.0;
  double amplitude = 0.0;
  bool accurate = false;
};

template <class Rng>
std::size_t sample_index(const std::vector<double>& cdf, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, cdf.back());
  const double r = u(rng);
  auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

/// Draws one AE outcome. `accuracy_bits` defines the success event
/// |fold - theta| < 2^-accuracy_bits.
template <class Rng>
AeOutcome ae_sample(const AeDistribution& d, std::size_t accuracy_bits, Rng& rng) {
  AeOutcome o;
  o.y = sample_index(d.cdf, rng);
  o.folded = ae_fold(o.y, d.bits);
  o.amplitude = std::sin(std::numbers::pi * o.folded);
  o.accurate = std::abs(o.folded - d.theta) < std::ldexp(1.0, -static_cast<int>(accuracy_bits));
  return o;
}

/// Memo of analytic AE distributions keyed on (amplitude bits, register
/// size), bounded by the total number of stored outcomes.
class AeCache {
 public:
  std::shared_ptr<const AeDistribution> get(double amplitude, std::size_t bits) {
    const auto key = std::make_pair(std::bit_cast<std::uint64_t>(std::abs(amplitude)), bits);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    const std::size_t size = std::size_t{1} << bits;
    if (stored_ + size > kMaxOutcomes) {
      map_.clear();
      stored_ = 0;
    }
    auto d = std::make_shared<const AeDistribution>(ae_distribution_analytic(amplitude, bits));
    map_.emplace(key, d);
    stored_ += size;
    return d;
  }

 private:
  static constexpr std::size_t kMaxOutcomes = std::size_t{1} << 23;
  std::size_t stored_ = 0;
  std::map<std::pair<std::uint64_t, std::size_t>, std::shared_ptr<const AeDistribution>> map_;
};

// ---------------------------------------------------------------------------
// Grover search

/// Pr(measure a marked item) after j iterations with t of n marked.
inline double grover_success_probability(std::size_t n, std::size_t t, std::size_t j) {
  if (n == 0 || t == 0) return 0.0;
  if (t >= n) return 1.0;
  const double theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(n)));
  const double s = std::sin((2.0 * static_cast<double>(j) + 1.0) * theta);
  return s * s;
}

/// Runs j Grover iterations from the uniform superposition over n items
/// against the fixed marked set and measures.
template <class Rng>
std::size_t grover_measure(const std::vector<char>& marked, std::size_t j, ExecutionMode mode, Rng& rng) {
  const std::size_t n = marked.size();
  require(n > 0, ErrorCode::InvalidArgument, "empty search domain");
  if (mode == ExecutionMode::Sampling) {
    std::vector<double> a(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (std::size_t it = 0; it < j; ++it) {
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (marked[i]) a[i] = -a[i];
        mean += a[i];
      }
      mean /= static_cast<double>(n);
      for (auto& x : a) x = 2.0 * mean - x;
    }
    std::vector<double> cdf(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) cdf[i] = (acc += a[i] * a[i]);
    return sample_index(cdf, rng);
  }
  std::vector<std::size_t> good, bad;
  for (std::size_t i = 0; i < n; ++i) (marked[i] ? good : bad).push_back(i);
  const double p = grover_success_probability(n, good.size(), j);
  std::bernoulli_distribution hit(p);
  const auto& pool = (good.empty() || (!bad.empty() && !hit(rng))) ? bad : good;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  return pool[pick(rng)];
}

struct SearchResult {
  std::optional<std::size_t> index;
  std::uint64_t iterations = 0;
  std::uint64_t measurements = 0;
};

/// Budget for search with an unknown number of marked items.
inline std::uint64_t qsearch_budget(std::size_t n) {
  return static_cast<std::uint64_t>(std::ceil(18.0 * std::sqrt(static_cast<double>(n)))) + 1;
}

/// Growth factor of the QSearch round size M = ceil(c^l); any 1 < c < 2 works.
inline constexpr double kQsearchGrowth = 1.5;

/// Search with an unknown number of marked items. Round l measures one
/// uniform sample, then runs j Grover iterations with j uniform in
/// [1, ceil(c^l)] and measures again. `marked` is the oracle realization the
/// iterations run against; each measured candidate is confirmed with
/// `verify`. A measurement after j iterations charges j + 1 against
/// `budget`.
template <class Rng>
SearchResult qsearch(const std::vector<char>& marked, const std::function<bool(std::size_t)>& verify,
                     ExecutionMode mode, Rng& rng, std::uint64_t budget = 0) {
  SearchResult res;
  const std::size_t n = marked.size();
  if (n == 0) return res;
  if (budget == 0) budget = qsearch_budget(n);
  std::uint64_t spent = 0;
  double round_size = 1.0;
  const auto measure = [&](std::uint64_t j) {
    spent += j + 1;
    res.iterations += j;
    ++res.measurements;
    const std::size_t i = grover_measure(marked, static_cast<std::size_t>(j), mode, rng);
    if (verify(i)) res.index = i;
    return res.index.has_value();
  };
  for (;;) {
    if (spent + 1 > budget || measure(0)) break;
    round_size = std::min(round_size * kQsearchGrowth, static_cast<double>(budget));
    std::uniform_int_distribution<std::uint64_t> pick(1, static_cast<std::uint64_t>(std::ceil(round_size)));
    const std::uint64_t j = pick(rng);
    if (spent + j + 1 > budget || measure(j)) break;
  }
  return res;
}

inline constexpr double kDetectGrowth = 1.4;

/// Budget for detection: 3 ceil(pi/4 sqrt(n)) iterations plus checks.
inline std::uint64_t grover_detect_budget(std::size_t n) {
  return 3 * static_cast<std::uint64_t>(std::ceil(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n))));
}

/// Fixed-budget detection. Rounds draw j uniformly from [0, min(ceil(r), left))
/// where left is the unspent budget, r grows by 7/5 up to sqrt(n), and each
/// measurement charges j + 1. Finds a marked item w.p. >= 5/6 when one exists.
template <class Rng>
SearchResult grover_detect(const std::vector<char>& marked, const std::function<bool(std::size_t)>& verify,
                           ExecutionMode mode, Rng& rng) {
  SearchResult res;
  const std::size_t n = marked.size();
  if (n == 0) return res;
  const std::uint64_t budget = grover_detect_budget(n);
  const double cap = std::sqrt(static_cast<double>(n));
  std::uint64_t spent = 0;
  double round_size = 1.0;
  while (spent < budget) {
    const std::uint64_t width = std::min(static_cast<std::uint64_t>(std::ceil(round_size)), budget - spent);
    std::uniform_int_distribution<std::uint64_t> pick(0, width - 1);
    const std::uint64_t j = pick(rng);
    spent += j + 1;
    res.iterations += j;
    ++res.measurements;
    const std::size_t i = grover_measure(marked, static_cast<std::size_t>(j), mode, rng);
    if (verify(i)) {
      res.index = i;
      break;
    }
    round_size = std::min(round_size * kDetectGrowth, cap);
  }
  return res;
}

struct MinFindResult {
  std::size_t index = 0;
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t iterations = 0;
};

inline std::uint64_t min_finding_budget(std::size_t m) {
  const double lg = std::log2(static_cast<double>(std::max<std::size_t>(m, 2)));
  return static_cast<std::uint64_t>(std::ceil(22.5 * std::sqrt(static_cast<double>(m)) + 1.4 * lg * lg));
}

/// Minimum finding over g (infinity allowed): random start threshold, then
/// repeated search for strictly smaller values. Two independent runs, the
/// better one is kept.
template <class Rng>
MinFindResult min_finding(const std::vector<double>& g, ExecutionMode mode, Rng& rng, std::size_t runs = 2) {
  const std::size_t m = g.size();
  require(m > 0, ErrorCode::InvalidArgument, "empty minimum-finding domain");
  require(std::any_of(g.begin(), g.end(), [](double v) { return std::isfinite(v); }), ErrorCode::AllInfinite,
          "every candidate evaluates to infinity");
  MinFindResult best;
  std::uniform_int_distribution<std::size_t> start(0, m - 1);
  for (std::size_t r = 0; r < runs; ++r) {
    std::size_t y = start(rng);
    const std::uint64_t budget = min_finding_budget(m);
    std::uint64_t spent = 0;
    while (spent < budget) {
      std::vector<char> marked(m);
      for (std::size_t i = 0; i < m; ++i) marked[i] = g[i] < g[y];
      const SearchResult s = qsearch(marked, [&](std::size_t i) { return g[i] < g[y]; }, mode, rng, budget - spent);
      spent += s.iterations + s.measurements;
      best.iterations += s.iterations;
      if (!s.index) break;
      y = *s.index;
    }
    if (g[y] < best.value || (r == 0 && !std::isfinite(best.value))) {
      best.index = y;
      best.value = g[y];
    }
  }
  return best;
}

}  // namespace qsimplex
