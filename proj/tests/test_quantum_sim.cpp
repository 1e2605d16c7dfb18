#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsimplex/primitives.hpp"
#include "qsimplex/qlsa.hpp"
#include "qsimplex/statevector.hpp"

using namespace qsimplex;

namespace {

double chi_square_p(const std::vector<std::size_t>& counts) {
  double total = 0.0;
  for (std::size_t c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (std::size_t c : counts) stat += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Exact success probability of fixed-budget detection with t of n marked:
/// rounds draw j uniformly from [0, min(ceil(r), left)), r grows by 7/5 up to
/// sqrt n, each measurement costs j + 1 against budget 3 ceil(pi/4 sqrt n).
double detect_probability(std::size_t n, std::size_t t) {
  const std::uint64_t budget =
      3 * static_cast<std::uint64_t>(std::ceil(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n))));
  const double theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(n)));
  const double cap = std::sqrt(static_cast<double>(n));
  std::map<std::pair<std::uint64_t, double>, double> memo;
  std::function<double(std::uint64_t, double)> miss = [&](std::uint64_t spent, double r) -> double {
    const auto key = std::make_pair(spent, r);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (spent >= budget) return 1.0;
    const auto M = std::min(static_cast<std::uint64_t>(std::ceil(r)), budget - spent);
    double total = 0.0;
    for (std::uint64_t j = 0; j < M; ++j) {
      const double s = std::sin((2.0 * static_cast<double>(j) + 1.0) * theta);
      total += (1.0 - s * s) * miss(spent + j + 1, std::min(r * 1.4, cap));
    }
    return memo[key] = total / static_cast<double>(M);
  };
  return 1.0 - miss(0, 1.0);
}

Eigen::VectorXd random_sparse(std::size_t m, std::size_t nnz, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  for (std::size_t i = 0; i < nnz; ++i) v(static_cast<Eigen::Index>(idx[i])) = g(rng);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// State preparation and circuits

TEST(PrepareSparseState, SingleNonzero) {
  const PreparedUnitary U = prepare_sparse_state(Eigen::VectorXd::Unit(8, 3));
  const StateVector s = U.prepared_state();
  EXPECT_NEAR(std::abs(s[3]), 1.0, 1e-12);  // |011>
  EXPECT_LE(U.gate_cost, 3u);
}

TEST(PrepareSparseState, UniformTwoQubits) {
  const StateVector s = prepare_sparse_state(Eigen::Vector4d(0.5, 0.5, 0.5, 0.5)).prepared_state();
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(s[i].real(), 0.5, 1e-12);
}

TEST(PrepareSparseState, RandomThreeSparse) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXd v = random_sparse(16, 3, rng);
    const PreparedUnitary U = prepare_sparse_state(v);
    const StateVector s = U.prepared_state();
    const Eigen::VectorXd expect = v / v.norm();
    for (std::size_t i = 0; i < 16; ++i) {
      EXPECT_NEAR(s[i].real(), expect(static_cast<Eigen::Index>(i)), 1e-12);
      EXPECT_NEAR(s[i].imag(), 0.0, 1e-12);
    }
    EXPECT_LE(U.gate_cost, 3u * 4u);
  }
}

TEST(PrepareSparseState, RejectsZeroVector) {
  EXPECT_THROW(prepare_sparse_state(Eigen::VectorXd::Zero(4)), Error);
}

// Invariant: gates preserve the norm and inverse circuits undo them.
TEST(Circuit, NormPreservedAndInverseRoundTrip) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  std::uniform_int_distribution<std::size_t> q(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c(4);
    for (int g = 0; g < 30; ++g) {
      const std::size_t t = q(rng), ctl = q(rng);
      std::vector<Control> cs;
      if (ctl != t) cs.push_back({ctl, g % 2 == 0});
      switch (g % 5) {
        case 0: c.h(t, cs); break;
        case 1: c.x(t, cs); break;
        case 2: c.ry(t, ang(rng), cs); break;
        case 3: c.z(t, cs); break;
        default: c.phase(t, ang(rng), cs); break;
      }
    }
    StateVector s = prepare_sparse_state(random_sparse(16, 5, rng)).prepared_state();
    const StateVector start = s;
    c.apply(s);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    c.inverse().apply(s);
    for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(s[i] - start[i]), 0.0, 1e-12);
  }
}

TEST(InverseQft, MatchesDirectSum) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<Complex> a(16);
  for (auto& x : a) x = Complex(g(rng), g(rng));
  std::vector<Complex> f = a;
  inverse_qft(f);
  for (std::size_t y = 0; y < 16; ++y) {
    Complex s = 0.0;
    for (std::size_t x = 0; x < 16; ++x) s += a[x] * std::polar(1.0, -2.0 * std::numbers::pi * double(x * y) / 16.0);
    EXPECT_NEAR(std::abs(f[y] - s / 4.0), 0.0, 1e-12);
  }
}

// ---------------------------------------------------------------------------
// Phase estimation

namespace {

/// Single-qubit phase gate as an operator; |1> is an eigenstate with phase phi.
std::function<void(StateVector&)> phase_op(double phi) {
  return [phi](StateVector& s) { Circuit(1).phase(0, 2.0 * std::numbers::pi * phi).apply(s); };
}

StateVector ket1() {
  StateVector s(1);
  s[0] = 0.0;
  s[1] = 1.0;
  return s;
}

}  // namespace

// The two test-side forms of the phase-estimation law agree.
TEST(PhaseEstimation, OracleClosedFormMatchesDirectSum) {
  std::mt19937_64 rng(40);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t bits = 1; bits <= 6; ++bits)
    for (double phi : {0.0, 0.25, u(rng), u(rng), u(rng)}) {
      const auto a = oracle::pe_distribution(phi, bits);
      const auto b = oracle::pe_distribution_closed(phi, bits);
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
    }
}

TEST(PhaseEstimation, ExactQuarter) {
  for (ExecutionMode mode : {ExecutionMode::Analytic, ExecutionMode::Sampling}) {
    const PhaseEstimation pe = phase_estimation(phase_op(0.25), ket1(), 2, mode);
    EXPECT_NEAR(pe.distribution[1], 1.0, 1e-12);  // 0.01 = 1/4
  }
}

TEST(PhaseEstimation, ZeroPhase) {
  for (ExecutionMode mode : {ExecutionMode::Analytic, ExecutionMode::Sampling}) {
    const PhaseEstimation pe = phase_estimation(phase_op(0.0), ket1(), 4, mode);
    EXPECT_NEAR(pe.distribution[0], 1.0, 1e-12);
  }
}

TEST(PhaseEstimation, OneThirdMeetsAccuracyBound) {
  const std::size_t q = 3;
  const double eps_fail = 0.25;
  const std::size_t t = pe_total_qubits(q, eps_fail);
  EXPECT_EQ(t, 5u);
  const std::vector<double> lib = phase_estimation(phase_op(1.0 / 3.0), ket1(), t, ExecutionMode::Sampling).distribution;
  const std::vector<double> ref = oracle::pe_distribution(1.0 / 3.0, t);
  double p = 0.0;
  for (std::size_t a = 0; a < lib.size(); ++a) {
    EXPECT_NEAR(lib[a], ref[a], 1e-12);
    if (phase_distance(1.0 / 3.0, double(a) / double(lib.size())) < std::ldexp(1.0, -int(q))) p += ref[a];
  }
  EXPECT_GE(p, 1.0 - eps_fail);
}

TEST(PhaseEstimation, AnalyticMatchesCircuitAndOracle) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double phi = u(rng);
    const auto a = phase_estimation(phase_op(phi), ket1(), 6, ExecutionMode::Analytic);
    const auto c = phase_estimation(phase_op(phi), ket1(), 6, ExecutionMode::Sampling);
    const auto o = oracle::pe_distribution(phi, 6);
    EXPECT_TRUE(a.analytic);
    EXPECT_FALSE(c.analytic);
    for (std::size_t y = 0; y < o.size(); ++y) {
      EXPECT_NEAR(a.distribution[y], o[y], 1e-10);
      EXPECT_NEAR(c.distribution[y], o[y], 1e-10);
    }
  }
}

TEST(PhaseEstimation, SuperpositionInputMixesEigenphases) {
  // (|0> + |1>)/sqrt2 under the phase gate: weight 1/2 on phase 0 and on phi.
  StateVector in(1);
  in[0] = in[1] = 1.0 / std::sqrt(2.0);
  const double phi = 0.3;
  const auto pe = phase_estimation(phase_op(phi), in, 5, ExecutionMode::Analytic);
  EXPECT_FALSE(pe.analytic);
  const auto z = oracle::pe_distribution(0.0, 5), p = oracle::pe_distribution(phi, 5);
  for (std::size_t y = 0; y < z.size(); ++y) EXPECT_NEAR(pe.distribution[y], 0.5 * (z[y] + p[y]), 1e-10);
}

// ---------------------------------------------------------------------------
// Amplitude estimation

TEST(AmplitudeEstimation, FullAmplitudeIsExact) {
  const AeDistribution d = ae_distribution_analytic(1.0, 6);
  EXPECT_DOUBLE_EQ(d.theta, 0.5);
  EXPECT_NEAR(d.probs[32], 1.0, 1e-12);
}

TEST(AmplitudeEstimation, HalfAmplitudeBound) {
  for (std::size_t b : {3u, 5u, 7u}) {
    const std::vector<double> ref = oracle::ae_distribution(0.5, b);
    const AeDistribution d = ae_distribution_analytic(0.5, b);
    EXPECT_NEAR(d.theta, 1.0 / 6.0, 1e-15);
    double p = 0.0;
    for (std::size_t y = 0; y < ref.size(); ++y) {
      EXPECT_NEAR(d.probs[y], ref[y], 1e-12);
      if (std::abs(ae_fold(y, b) - 1.0 / 6.0) <= std::ldexp(1.0, -int(b))) p += ref[y];
    }
    EXPECT_GE(p, 8.0 / (std::numbers::pi * std::numbers::pi));
  }
}

TEST(AmplitudeEstimation, GridPhaseIsPointMass) {
  const std::size_t b = 5;
  for (std::size_t k = 1; k < 16; ++k) {
    const double a = std::sin(std::numbers::pi * double(k) / 32.0);
    const AeDistribution d = ae_distribution_analytic(a, b);
    double at = 0.0;
    for (std::size_t y = 0; y < d.probs.size(); ++y)
      if (std::abs(ae_fold(y, b) - double(k) / 32.0) < 1e-12) at += d.probs[y];
    EXPECT_NEAR(at, 1.0, 1e-10);
  }
}

TEST(AmplitudeEstimation, CircuitMatchesAnalytic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::VectorXd v = random_sparse(8, 4, rng);
    const PreparedUnitary U = prepare_sparse_state(v);
    std::vector<char> good(8, 0);
    good[static_cast<std::size_t>(trial % 8)] = 1;
    const double amp = std::abs(v(trial % 8)) / v.norm();
    const AeDistribution c = ae_distribution_circuit(U.circuit, good, 5);
    const AeDistribution a = ae_distribution_analytic(amp, 5);
    for (std::size_t y = 0; y < a.probs.size(); ++y) EXPECT_NEAR(c.probs[y], a.probs[y], 1e-10);
  }
}

TEST(AmplitudeEstimation, SampleAccuracyRate) {
  std::mt19937_64 rng(6);
  const std::size_t q = ae_accuracy_bits(0.01);
  const AeDistribution d = ae_distribution_analytic(0.37, q + 2);
  int ok = 0;
  const int runs = 4000;
  for (int i = 0; i < runs; ++i) ok += ae_sample(d, q, rng).accurate;
  EXPECT_GE(double(ok) / runs, 0.75);
}

// ---------------------------------------------------------------------------
// Grover search

TEST(Grover, SamplingMatchesClosedForm) {
  for (std::size_t t : {1u, 3u, 7u}) {
    std::vector<char> marked(16, 0);
    for (std::size_t i = 0; i < t; ++i) marked[i * 2] = 1;
    for (std::size_t j = 0; j < 5; ++j) {
      std::mt19937_64 rng(7);
      int hit = 0;
      const int runs = 4000;
      for (int r = 0; r < runs; ++r) hit += marked[grover_measure(marked, j, ExecutionMode::Sampling, rng)];
      const double p = grover_success_probability(16, t, j);
      EXPECT_NEAR(double(hit) / runs, p, 4.0 * std::sqrt(p * (1 - p) / runs) + 1e-9);
    }
  }
}

TEST(QSearch, AllMarkedFoundImmediately) {
  std::mt19937_64 rng(8);
  const std::vector<char> marked(8, 1);
  for (int r = 0; r < 50; ++r) {
    const SearchResult s = qsearch(marked, [](std::size_t) { return true; }, ExecutionMode::Analytic, rng);
    ASSERT_TRUE(s.index);
    EXPECT_LE(s.iterations, 1u);
  }
}

TEST(QSearch, NoneMarkedIsNotFound) {
  std::mt19937_64 rng(9);
  const std::vector<char> marked(16, 0);
  const SearchResult s = qsearch(marked, [](std::size_t) { return false; }, ExecutionMode::Analytic, rng);
  EXPECT_FALSE(s.index);
  EXPECT_LE(s.iterations + s.measurements, qsearch_budget(16));
}

TEST(QSearch, SingleMarkedOfSixteen) {
  // c = 2 frozen from a 1000-run calibration at n = 16 (mean 1.9 iterations).
  constexpr double kC = 2.0;
  for (ExecutionMode mode : {ExecutionMode::Analytic, ExecutionMode::Sampling}) {
    std::vector<char> marked(16, 0);
    marked[11] = 1;
    std::size_t found = 0, iterations = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      std::mt19937_64 rng(seed);
      const SearchResult s = qsearch(marked, [&](std::size_t i) { return marked[i] != 0; }, mode, rng);
      found += s.index == std::optional<std::size_t>(11);
      iterations += s.iterations;
    }
    EXPECT_GE(found, 150u);
    EXPECT_LE(double(iterations) / 200.0, kC * std::sqrt(16.0));
  }
}

TEST(QSearch, ReturnedIndexUniformOverMarked) {
  for (ExecutionMode mode : {ExecutionMode::Analytic, ExecutionMode::Sampling}) {
    std::vector<char> marked(16, 0);
    const std::vector<std::size_t> which = {1, 4, 9, 14};
    for (std::size_t i : which) marked[i] = 1;
    std::vector<std::size_t> counts(which.size(), 0);
    std::mt19937_64 rng(10);
    std::size_t misses = 0;
    for (int r = 0; r < 4000; ++r) {
      const SearchResult s = qsearch(marked, [&](std::size_t i) { return marked[i] != 0; }, mode, rng);
      if (!s.index) {
        ++misses;
        continue;
      }
      counts[std::find(which.begin(), which.end(), *s.index) - which.begin()]++;
    }
    EXPECT_LE(misses, 40u);
    EXPECT_GT(chi_square_p(counts), 0.01);
  }
}

TEST(GroverDetect, ExactProbabilityMeetsTarget) {
  for (std::size_t n = 1; n <= 64; ++n)
    for (std::size_t t = 1; t <= n; ++t) EXPECT_GE(detect_probability(n, t), 5.0 / 6.0) << "n=" << n << " t=" << t;
}

TEST(GroverDetect, EmpiricalRateMatchesExact) {
  for (auto [n, t] : {std::pair<std::size_t, std::size_t>{4, 1}, {4, 3}, {12, 2}, {40, 1}}) {
    std::vector<char> marked(n, 0);
    for (std::size_t i = 0; i < t; ++i) marked[i] = 1;
    std::mt19937_64 rng(11 + n);
    const int runs = 4000;
    int hit = 0;
    for (int r = 0; r < runs; ++r)
      hit += grover_detect(marked, [&](std::size_t i) { return marked[i] != 0; }, ExecutionMode::Analytic, rng)
                 .index.has_value();
    const double p = detect_probability(n, t);
    EXPECT_NEAR(double(hit) / runs, p, 4.0 * std::sqrt(p * (1 - p) / runs) + 1e-9) << "n=" << n << " t=" << t;
  }
}

TEST(GroverDetect, NothingMarked) {
  std::mt19937_64 rng(12);
  const std::vector<char> marked(9, 0);
  const SearchResult s = grover_detect(marked, [](std::size_t) { return false; }, ExecutionMode::Analytic, rng);
  EXPECT_FALSE(s.index);
  EXPECT_LE(s.iterations + s.measurements, grover_detect_budget(9));
}

// ---------------------------------------------------------------------------
// Minimum finding

TEST(MinFinding, ConstantFunction) {
  std::mt19937_64 rng(13);
  const std::vector<double> g(7, 2.5);
  EXPECT_EQ(min_finding(g, ExecutionMode::Analytic, rng).value, 2.5);
}

TEST(MinFinding, TiedMinimum) {
  std::mt19937_64 rng(14);
  const std::vector<double> g = {3, 1, 4, 1, 5};
  for (int r = 0; r < 50; ++r) {
    const std::size_t i = min_finding(g, ExecutionMode::Analytic, rng).index;
    EXPECT_TRUE(i == 1 || i == 3);
  }
}

TEST(MinFinding, RandomSixteenSuccessRate) {
  for (ExecutionMode mode : {ExecutionMode::Analytic, ExecutionMode::Sampling}) {
    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<double> g(16);
      for (double& v : g) v = u(rng);
      g[seed % 16] = seed % 3 == 0 ? std::numeric_limits<double>::infinity() : g[seed % 16];
      const double best = *std::min_element(g.begin(), g.end());
      ok += min_finding(g, mode, rng).value == best;
    }
    EXPECT_GE(ok, 150u);
  }
}

TEST(MinFinding, AllInfiniteThrows) {
  std::mt19937_64 rng(15);
  const std::vector<double> g(4, std::numeric_limits<double>::infinity());
  try {
    min_finding(g, ExecutionMode::Analytic, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AllInfinite);
  }
}

// ---------------------------------------------------------------------------
// QLSA oracle

TEST(Qlsa, IdentityZeroError) {
  std::mt19937_64 rng(16);
  const QlsaOracle o(Eigen::MatrixXd::Identity(3, 3), 1.0, 1, 0.1);
  const QlsaOutput out = qlsa_apply(o, Eigen::Vector3d(1, 0, 0), nullptr, rng);
  EXPECT_TRUE(out.state.isApprox(Eigen::Vector3d(1, 0, 0), 1e-14));
  EXPECT_TRUE(out.success);
  EXPECT_EQ(out.stats.qlsa_invocations, 1u);
}

TEST(Qlsa, DiagonalSystem) {
  std::mt19937_64 rng(17);
  Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
  A(0, 0) = 1.0;
  A(1, 1) = 0.5;
  const QlsaOracle o(A, 2.0, 1, 0.1);
  const QlsaOutput out = qlsa_apply(o, Eigen::Vector2d(1, 1) / std::sqrt(2.0), nullptr, rng);
  EXPECT_NEAR(out.state(0), 1.0 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(out.state(1), 2.0 / std::sqrt(5.0), 1e-12);
}

TEST(Qlsa, ErrorModesHitExactPrecision) {
  std::mt19937_64 rng(18);
  Eigen::Matrix3d A;
  A << 0.9, 0.1, 0, 0, 0.7, 0.2, 0.1, 0, 0.8;
  const Eigen::Matrix3d As = A / oracle::sigma_max(A);
  for (QlsaErrorMode mode : {QlsaErrorMode::Worst, QlsaErrorMode::Random}) {
    const QlsaOracle o(As, oracle::sigma_max(A) / oracle::sigma_min(A), 3, 0.01, {mode, 1.0});
    const Eigen::VectorXd probe = Eigen::Vector3d(0.3, -0.5, 0.8);
    for (int r = 0; r < 20; ++r) {
      const QlsaOutput out = qlsa_apply(o, Eigen::Vector3d(1, 2, 3), &probe, rng);
      EXPECT_NEAR((out.state - out.exact).norm(), 0.01, 1e-12);
      EXPECT_NEAR(out.state.norm(), 1.0, 1e-12);
    }
  }
}

TEST(Qlsa, WorstModePushesProbeTowardZero) {
  std::mt19937_64 rng(19);
  const QlsaOracle o(Eigen::Matrix2d::Identity(), 1.0, 1, 0.05, {QlsaErrorMode::Worst, 1.0});
  const Eigen::VectorXd probe = Eigen::Vector2d(1, 0);
  const QlsaOutput pos = qlsa_apply(o, Eigen::Vector2d(0.6, 0.8), &probe, rng);
  EXPECT_LT(probe.dot(pos.state), probe.dot(pos.exact));
  const QlsaOutput neg = qlsa_apply(o, Eigen::Vector2d(-0.6, 0.8), &probe, rng);
  EXPECT_GT(probe.dot(neg.state), probe.dot(neg.exact));
}

TEST(Qlsa, RejectsSpectrumOutsideRange) {
  try {
    QlsaOracle(Eigen::Matrix2d::Identity() * 2.0, 1.0, 1, 0.1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpectrumOutOfRange);
  }
}

TEST(Qlsa, SuccessFlagRate) {
  std::mt19937_64 rng(20);
  const QlsaOracle o(Eigen::Matrix2d::Identity(), 1.0, 1, 0.1, {QlsaErrorMode::Zero, 0.8});
  int ok = 0;
  for (int r = 0; r < 4000; ++r) ok += qlsa_apply(o, Eigen::Vector2d(1, 1), nullptr, rng).success;
  EXPECT_NEAR(ok / 4000.0, 0.8, 4.0 * std::sqrt(0.16 / 4000));
}

TEST(Qlsa, ChargedCountsMatchFormula) {
  const QlsaOracle o(Eigen::Matrix2d::Identity(), 2.0, 3, 1.0);
  const QlsaCost c = qlsa_cost(3.0, 2.0, 1.0, 2.0);
  EXPECT_EQ(o.per_call_stats().pab_queries, c.pab_queries);
  EXPECT_EQ(o.per_call_stats().pb_queries, c.pb_queries);
}

// ---------------------------------------------------------------------------
// Column oracles

TEST(ColumnOracle, SingleColumnReducesToStatePrep) {
  Eigen::MatrixXd A(3, 3);
  A << 1, 0, 0.2, 0, 1, -0.4, 0, 0, 0.9;
  const LpInstance inst = LpInstance::from_dense(A, Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(1, 1, 1));
  const ColumnOracle co = column_superposition_oracle(inst, {2});
  const StateVector s = co.frobenius_superposition.prepared_state();
  const StateVector p = prepare_sparse_state(A.col(2), s.qubits()).prepared_state();
  for (std::size_t i = 0; i < s.dim(); ++i) EXPECT_NEAR(std::abs(s[i] - p[i]), 0.0, 1e-12);
}

TEST(ColumnOracle, EqualNormsGiveEqualWeights) {
  Eigen::MatrixXd A(2, 2);
  A << 3, 0, 4, 5;
  const LpInstance inst = LpInstance::from_dense(A, Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 1));
  const ColumnOracle co = column_superposition_oracle(inst, {0, 1});
  const StateVector s = co.frobenius_superposition.prepared_state();
  const std::size_t rows = std::size_t{1} << co.row_qubits;
  for (std::size_t k = 0; k < 2; ++k) {
    double w = 0.0;
    for (std::size_t r = 0; r < rows; ++r) w += std::norm(s[k * rows + r]);
    EXPECT_NEAR(std::sqrt(w), 1.0 / std::sqrt(2.0), 1e-12);
  }
}

TEST(ColumnOracle, RandomWeightsAndControlledLoads) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  Eigen::MatrixXd A(4, 8);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 8; ++j) A(i, j) = g(rng);
  const LpInstance inst = LpInstance::from_dense(A, Eigen::Vector4d::Ones(), Eigen::VectorXd::Ones(8));
  std::vector<std::size_t> cols(8);
  for (std::size_t j = 0; j < 8; ++j) cols[j] = j;
  const ColumnOracle co = column_superposition_oracle(inst, cols);
  EXPECT_NEAR(co.frobenius, A.norm(), 1e-12);
  const StateVector s = co.frobenius_superposition.prepared_state();
  const std::size_t rows = std::size_t{1} << co.row_qubits;
  for (std::size_t k = 0; k < 8; ++k) {
    double w = 0.0;
    for (std::size_t r = 0; r < rows; ++r) w += std::norm(s[k * rows + r]);
    EXPECT_NEAR(std::sqrt(w), A.col(static_cast<Eigen::Index>(k)).norm() / A.norm(), 1e-10);
    // |k>|0> -> |k>|A_k / ||A_k||>.
    StateVector in(co.index_qubits + co.row_qubits);
    in[0] = 0.0;
    in[k * rows] = 1.0;
    co.controlled_by_index.apply(in);
    const Eigen::VectorXd col = A.col(static_cast<Eigen::Index>(k)).normalized();
    for (std::size_t r = 0; r < 4; ++r) EXPECT_NEAR(in[k * rows + r].real(), col(static_cast<Eigen::Index>(r)), 1e-12);
  }
}

TEST(ColumnOracle, ZeroColumnsAreSetAside) {
  Eigen::MatrixXd A(2, 3);
  A << 1, 0, 1, 0, 0, 1;
  const LpInstance inst = LpInstance::from_dense(A, Eigen::Vector2d(1, 1), Eigen::Vector3d(1, 1, 1));
  const ColumnOracle co = column_superposition_oracle(inst, {1, 2});
  EXPECT_EQ(co.zero_columns, std::vector<std::size_t>{1});
  EXPECT_THROW(column_superposition_oracle(inst, {1}), Error);
}
