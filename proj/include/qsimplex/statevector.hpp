#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsimplex/error.hpp"

namespace qsimplex {

using Complex = std::complex<double>;

/// Per-run oracle and gate counters.
struct QueryStats {
  std::uint64_t u_calls = 0;
  std::uint64_t controlled_u_calls = 0;
  std::uint64_t qlsa_invocations = 0;
  std::uint64_t pab_queries = 0;
  std::uint64_t pb_queries = 0;
  std::uint64_t grover_iterations = 0;
  std::uint64_t ae_repetitions = 0;
  std::uint64_t basic_gates = 0;

  QueryStats& operator+=(const QueryStats& o) {
    u_calls += o.u_calls;
    controlled_u_calls += o.controlled_u_calls;
    qlsa_invocations += o.qlsa_invocations;
    pab_queries += o.pab_queries;
    pb_queries += o.pb_queries;
    grover_iterations += o.grover_iterations;
    ae_repetitions += o.ae_repetitions;
    basic_gates += o.basic_gates;
    return *this;
  }

  /// Adds `times` copies of `o`.
  void add_scaled(const QueryStats& o, std::uint64_t times) {
    u_calls += o.u_calls * times;
    controlled_u_calls += o.controlled_u_calls * times;
    qlsa_invocations += o.qlsa_invocations * times;
    pab_queries += o.pab_queries * times;
    pb_queries += o.pb_queries * times;
    grover_iterations += o.grover_iterations * times;
    ae_repetitions += o.ae_repetitions * times;
    basic_gates += o.basic_gates * times;
  }

  friend QueryStats operator-(QueryStats a, const QueryStats& b) {
    a.u_calls -= b.u_calls;
    a.controlled_u_calls -= b.controlled_u_calls;
    a.qlsa_invocations -= b.qlsa_invocations;
    a.pab_queries -= b.pab_queries;
    a.pb_queries -= b.pb_queries;
    a.grover_iterations -= b.grover_iterations;
    a.ae_repetitions -= b.ae_repetitions;
    a.basic_gates -= b.basic_gates;
    return a;
  }

  friend bool operator==(const QueryStats&, const QueryStats&) = default;
};

/// Number of qubits needed to index `dim` basis states (at least 1).
inline std::size_t qubits_for(std::size_t dim) {
  std::size_t q = 1;
  while ((std::size_t{1} << q) < dim) ++q;
  return q;
}

/// Amplitudes over q qubits. Qubit 0 is the most significant bit of the index.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t qubits) : qubits_(qubits), amp_(std::size_t{1} << qubits) {
    amp_[0] = 1.0;
  }

  static StateVector from_amplitudes(std::vector<Complex> amps) {
    std::size_t q = qubits_for(amps.size());
    require(amps.size() == (std::size_t{1} << q), ErrorCode::InvalidArgument,
            "amplitude count must be a power of two");
    StateVector s;
    s.qubits_ = q;
    s.amp_ = std::move(amps);
    return s;
  }

  [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
  [[nodiscard]] std::size_t dim() const noexcept { return amp_.size(); }
  [[nodiscard]] Complex& operator[](std::size_t i) { return amp_[i]; }
  [[nodiscard]] const Complex& operator[](std::size_t i) const { return amp_[i]; }
  [[nodiscard]] std::vector<Complex>& data() noexcept { return amp_; }
  [[nodiscard]] const std::vector<Complex>& data() const noexcept { return amp_; }

  [[nodiscard]] double norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
  }

  /// Re-normalizes when drift exceeds 1e-12.
  void renormalize() {
    const double n = norm();
    if (n > 0.0 && std::abs(n - 1.0) > 1e-12)
      for (auto& a : amp_) a /= n;
  }

  [[nodiscard]] std::size_t bit_mask(std::size_t qubit) const {
    return std::size_t{1} << (qubits_ - 1 - qubit);
  }

 private:
  std::size_t qubits_ = 0;
  std::vector<Complex> amp_;
};

enum class GateKind { X, H, RY, Z, Phase };

struct Control {
  std::size_t qubit;
  bool value;
};

struct Gate {
  GateKind kind;
  std::size_t target;
  double angle = 0.0;
  std::vector<Control> controls;
};

/// Ordered gate list over a fixed register.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t qubits) : qubits_(qubits) {}

  [[nodiscard]] std::size_t qubits() const noexcept { return qubits_; }
  [[nodiscard]] const std::vector<Gate>& gates() const noexcept { return gates_; }
  [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }

  Circuit& add(Gate g) {
    require(g.target < qubits_, ErrorCode::InvalidArgument, "gate target out of range");
    for (const auto& c : g.controls)
      require(c.qubit < qubits_ && c.qubit != g.target, ErrorCode::InvalidArgument, "bad control qubit");
    gates_.push_back(std::move(g));
    return *this;
  }
  Circuit& x(std::size_t t, std::vector<Control> ctl = {}) { return add({GateKind::X, t, 0.0, std::move(ctl)}); }
  Circuit& h(std::size_t t, std::vector<Control> ctl = {}) { return add({GateKind::H, t, 0.0, std::move(ctl)}); }
  Circuit& z(std::size_t t, std::vector<Control> ctl = {}) { return add({GateKind::Z, t, 0.0, std::move(ctl)}); }
  Circuit& ry(std::size_t t, double theta, std::vector<Control> ctl = {}) {
    return add({GateKind::RY, t, theta, std::move(ctl)});
  }
  Circuit& phase(std::size_t t, double phi, std::vector<Control> ctl = {}) {
    return add({GateKind::Phase, t, phi, std::move(ctl)});
  }

  /// Appends `other`, mapping its qubit j to qubit j + offset here.
  Circuit& append(const Circuit& other, std::size_t offset = 0) {
    for (Gate g : other.gates_) {
      g.target += offset;
      for (auto& c : g.controls) c.qubit += offset;
      add(std::move(g));
    }
    return *this;
  }

  /// Appends `other` (shifted by offset) with every gate additionally
  /// conditioned on `ctl`.
  Circuit& append_controlled(const Circuit& other, std::size_t offset, const std::vector<Control>& ctl) {
    for (Gate g : other.gates_) {
      g.target += offset;
      for (auto& c : g.controls) c.qubit += offset;
      g.controls.insert(g.controls.end(), ctl.begin(), ctl.end());
      add(std::move(g));
    }
    return *this;
  }

  [[nodiscard]] Circuit inverse() const {
    Circuit inv(qubits_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
      Gate g = *it;
      if (g.kind == GateKind::RY || g.kind == GateKind::Phase) g.angle = -g.angle;
      inv.gates_.push_back(std::move(g));
    }
    return inv;
  }

  void apply(StateVector& s) const {
    require(s.qubits() >= qubits_, ErrorCode::InvalidArgument, "state register too small for circuit");
    for (const auto& g : gates_) apply_gate(g, s);
  }

 private:
  static void apply_gate(const Gate& g, StateVector& s) {
    Complex m00, m01, m10, m11;
    switch (g.kind) {
      case GateKind::X: m00 = 0; m01 = 1; m10 = 1; m11 = 0; break;
      case GateKind::H: {
        const double r = std::numbers::sqrt2 / 2.0;
        m00 = r; m01 = r; m10 = r; m11 = -r;
        break;
      }
      case GateKind::RY: {
        const double c = std::cos(g.angle / 2.0), sn = std::sin(g.angle / 2.0);
        m00 = c; m01 = -sn; m10 = sn; m11 = c;
        break;
      }
      case GateKind::Z: m00 = 1; m01 = 0; m10 = 0; m11 = -1; break;
      case GateKind::Phase: m00 = 1; m01 = 0; m10 = 0; m11 = std::polar(1.0, g.angle); break;
    }
    const std::size_t tmask = s.bit_mask(g.target);
    std::size_t cmask = 0, cval = 0;
    for (const auto& c : g.controls) {
      cmask |= s.bit_mask(c.qubit);
      if (c.value) cval |= s.bit_mask(c.qubit);
    }
    auto& a = s.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if ((i & tmask) || (i & cmask) != cval) continue;
      const std::size_t j = i | tmask;
      const Complex a0 = a[i], a1 = a[j];
      a[i] = m00 * a0 + m01 * a1;
      a[j] = m10 * a0 + m11 * a1;
    }
  }

  std::size_t qubits_ = 0;
  std::vector<Gate> gates_;
};

/// A state-preparation unitary given as a circuit, plus the accounting
/// charged per application.
struct PreparedUnitary {
  Circuit circuit;
  std::size_t gate_cost = 0;
  bool real_amplitudes = true;
  QueryStats per_call;

  [[nodiscard]] std::size_t qubits() const { return circuit.qubits(); }

  void apply(StateVector& s) const { circuit.apply(s); }
  void apply_inverse(StateVector& s) const { circuit.inverse().apply(s); }

  /// U|0...0>.
  [[nodiscard]] StateVector prepared_state() const {
    StateVector s(circuit.qubits());
    circuit.apply(s);
    return s;
  }
};

/// Binary-tree state preparation: one (multi-)controlled RY or X per nonzero
/// tree node, so at most nnz(v) gates per level. U|0> = v/||v|| exactly.
inline PreparedUnitary prepare_sparse_state(const Eigen::VectorXd& v, std::size_t qubits = 0) {
  require(v.size() > 0 && v.allFinite(), ErrorCode::InvalidArgument, "state vector must be finite");
  const double norm = v.norm();
  require(norm > 0.0, ErrorCode::ZeroVector, "cannot prepare the zero vector");
  const std::size_t q = qubits ? qubits : qubits_for(static_cast<std::size_t>(v.size()));
  require((std::size_t{1} << q) >= static_cast<std::size_t>(v.size()), ErrorCode::InvalidArgument,
          "register too small for vector");

  // Sparse leaves: (index, value).
  std::vector<std::pair<std::size_t, double>> leaves;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0.0) leaves.emplace_back(static_cast<std::size_t>(i), v(i) / norm);

  PreparedUnitary out{Circuit(q), 0, true, {}};
  // Nodes at level l are prefixes of length l; walk only prefixes with mass.
  for (std::size_t level = 0; level < q; ++level) {
    const std::size_t shift = q - level;  // leaves under a level-l node share index >> shift
    const bool last = level + 1 == q;
    std::size_t k = 0;
    while (k < leaves.size()) {
      const std::size_t prefix = leaves[k].first >> shift;
      double left = 0.0, right = 0.0;
      while (k < leaves.size() && (leaves[k].first >> shift) == prefix) {
        const bool bit = (leaves[k].first >> (shift - 1)) & 1U;
        const double val = leaves[k].second;
        if (last) {
          (bit ? right : left) = val;
        } else {
          (bit ? right : left) += val * val;
        }
        ++k;
      }
      if (!last) {
        left = std::sqrt(left);
        right = std::sqrt(right);
      }
      std::vector<Control> ctl;
      for (std::size_t b = 0; b < level; ++b)
        ctl.push_back({b, static_cast<bool>((prefix >> (level - 1 - b)) & 1U)});
      if (right == 0.0 && left > 0.0) continue;
      if (left == 0.0 && right > 0.0 && !last) {
        out.circuit.x(level, std::move(ctl));
      } else {
        out.circuit.ry(level, 2.0 * std::atan2(right, left), std::move(ctl));
      }
    }
  }
  out.gate_cost = out.circuit.size();
  out.per_call.basic_gates = out.gate_cost;
  return out;
}

/// In-place inverse QFT on a length-2^b array:
/// out[y] = sum_a in[a] exp(-2 pi i a y / M) / sqrt(M).
inline void inverse_qft(std::vector<Complex>& a) {
  const std::size_t n = a.size();
  require(n > 0 && (n & (n - 1)) == 0, ErrorCode::InvalidArgument, "QFT length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    std::vector<Complex> tw(len / 2);
    for (std::size_t j = 0; j < len / 2; ++j) tw[j] = std::polar(1.0, ang * static_cast<double>(j));
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Complex u = a[i + j], v = a[i + j + len / 2] * tw[j];
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& x : a) x *= scale;
}

}  // namespace qsimplex
