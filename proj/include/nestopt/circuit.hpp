/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nestopt/support_set.hpp"

namespace nestopt {

enum class GateKind : std::uint8_t {
  X,
  Z,
  S,
  Sdg,
  T,
  Tdg,
  H,
  CNOT,  // qubits = {control, target}
  CZ,
  SWAP,
  CCNOT,  // qubits = {control, control, target}
  CCZ,
  MCT,        // qubits = {controls..., target}, > 2 controls
  PrepPlus,   // reset the wire to |+>
  PrepMinusY, // reset the wire to (|0> - i|1>)/sqrt(2)
  MeasX,      // X-basis measurement, outcome recorded in classical bit `bit`
  CondClifford,
  Gadget,  // diagonal parity-phase exp(i pi/4 * phase * parity(support))
};

/// Single-qubit Cliffords that may appear classically conditioned.
enum class CondKind : std::uint8_t { X, Z, S, Sdg };

struct Gate {
  GateKind kind{};
  std::vector<int> qubits;

  int bit = -1;                     // MeasX outcome bit
  CondKind cond_kind = CondKind::X; // CondClifford payload
  std::vector<int> cond_bits;      // CondClifford parity set (sorted)

  SupportSet support;   // Gadget
  std::uint8_t phase = 0;  // Gadget coefficient mod 8

  static Gate simple(GateKind k, std::vector<int> qs) {
    Gate g;
    g.kind = k;
    g.qubits = std::move(qs);
    return g;
  }
  static Gate x(int q) { return simple(GateKind::X, {q}); }
  static Gate z(int q) { return simple(GateKind::Z, {q}); }
  static Gate s(int q) { return simple(GateKind::S, {q}); }
  static Gate sdg(int q) { return simple(GateKind::Sdg, {q}); }
  static Gate t(int q) { return simple(GateKind::T, {q}); }
  static Gate tdg(int q) { return simple(GateKind::Tdg, {q}); }
  static Gate h(int q) { return simple(GateKind::H, {q}); }
  static Gate cnot(int c, int t) { return simple(GateKind::CNOT, {c, t}); }
  static Gate cz(int a, int b) { return simple(GateKind::CZ, {a, b}); }
  static Gate swap(int a, int b) { return simple(GateKind::SWAP, {a, b}); }
  static Gate ccnot(int a, int b, int t) { return simple(GateKind::CCNOT, {a, b, t}); }
  static Gate ccz(int a, int b, int c) { return simple(GateKind::CCZ, {a, b, c}); }
  static Gate prep_plus(int q) { return simple(GateKind::PrepPlus, {q}); }
  static Gate prep_minus_y(int q) { return simple(GateKind::PrepMinusY, {q}); }

  static Gate meas_x(int q, int outcome_bit) {
    Gate g = simple(GateKind::MeasX, {q});
    g.bit = outcome_bit;
    return g;
  }

  static Gate cond(CondKind ck, int q, std::vector<int> bits) {
    Gate g = simple(GateKind::CondClifford, {q});
    g.cond_kind = ck;
    std::sort(bits.begin(), bits.end());
    g.cond_bits = std::move(bits);
    return g;
  }

  static Gate gadget(SupportSet s, int phase_mod8) {
    Gate g;
    g.kind = GateKind::Gadget;
    g.support = std::move(s);
    g.phase = static_cast<std::uint8_t>(((phase_mod8 % 8) + 8) % 8);
    return g;
  }

  bool touches(int q) const {
    if (kind == GateKind::Gadget) return support.test(q);
    return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
  }

  bool is_clifford() const {
    switch (kind) {
      case GateKind::T:
      case GateKind::Tdg:
      case GateKind::CCNOT:
      case GateKind::CCZ:
      case GateKind::MCT:
        return false;
      case GateKind::Gadget:
        return phase % 2 == 0;
      default:
        return true;
    }
  }

  bool is_diagonal() const {
    switch (kind) {
      case GateKind::Z:
      case GateKind::S:
      case GateKind::Sdg:
      case GateKind::T:
      case GateKind::Tdg:
      case GateKind::CZ:
      case GateKind::CCZ:
      case GateKind::Gadget:
        return true;
      default:
        return false;
    }
  }
};

inline int gate_arity(GateKind k) {
  switch (k) {
    case GateKind::X:
    case GateKind::Z:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::H:
    case GateKind::PrepPlus:
    case GateKind::PrepMinusY:
    case GateKind::MeasX:
    case GateKind::CondClifford:
      return 1;
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP:
      return 2;
    case GateKind::CCNOT:
    case GateKind::CCZ:
      return 3;
    default:
      return -1;  // MCT / Gadget are variable arity
  }
}

class circuit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An ordered gate list over dense qubit indices.  Wires with index below
/// `n_inputs` form the declared input register; the rest are auxiliaries,
/// implicitly |0> unless a preparation gate retargets them.
struct Circuit {
  int n_inputs = 0;
  int n_total = 0;
  int bit_count = 0;
  std::vector<std::string> labels;  // size n_total once finalized
  std::vector<Gate> gates;

  Circuit() = default;
  Circuit(int inputs, int total) : n_inputs(inputs), n_total(total) { default_labels(); }
  explicit Circuit(int n) : Circuit(n, n) {}

  void default_labels() {
    labels.resize(static_cast<std::size_t>(n_total));
    for (int i = 0; i < n_total; ++i)
      if (labels[static_cast<std::size_t>(i)].empty())
        labels[static_cast<std::size_t>(i)] = "q" + std::to_string(i);
  }

  int add_aux(const std::string& label = "") {
    int idx = n_total++;
    labels.push_back(label.empty() ? ("aux" + std::to_string(idx)) : label);
    return idx;
  }

  int add_bit() { return bit_count++; }

  void push(Gate g) {
    check_gate(g);
    gates.push_back(std::move(g));
  }

  void append(const Circuit& other) {
    for (const Gate& g : other.gates) push(g);
  }

  void check_gate(const Gate& g) const {
    int fixed = gate_arity(g.kind);
    if (fixed > 0 && static_cast<int>(g.qubits.size()) != fixed)
      throw circuit_error("gate arity mismatch");
    if (g.kind == GateKind::MCT && g.qubits.size() < 4)
      throw circuit_error("MCT requires more than two controls");
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      if (g.qubits[i] < 0 || g.qubits[i] >= n_total) throw circuit_error("qubit index out of range");
      for (std::size_t j = i + 1; j < g.qubits.size(); ++j)
        if (g.qubits[i] == g.qubits[j]) throw circuit_error("repeated qubit in gate");
    }
    if (g.kind == GateKind::Gadget) {
      if (g.support.empty()) throw circuit_error("gadget with empty support");
      if (g.support.max_index() >= n_total) throw circuit_error("gadget support out of range");
    }
  }

  int count_kind(GateKind k) const {
    int c = 0;
    for (const Gate& g : gates)
      if (g.kind == k) ++c;
    return c;
  }

  /// Number of T and T† gates in the list.  CCNOT/CCZ are not expanded here.
  int t_count_gates() const {
    int c = 0;
    for (const Gate& g : gates)
      if (g.kind == GateKind::T || g.kind == GateKind::Tdg) ++c;
    return c;
  }

  int h_count() const { return count_kind(GateKind::H); }

  bool is_clifford_only() const {
    return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.is_clifford(); });
  }

  bool is_unitary_gateset() const {
    return std::none_of(gates.begin(), gates.end(), [](const Gate& g) {
      return g.kind == GateKind::MeasX || g.kind == GateKind::PrepPlus ||
             g.kind == GateKind::PrepMinusY || g.kind == GateKind::CondClifford;
    });
  }

  /// Inverse circuit (reversed order, per-gate dagger).  Requires a unitary
  /// gate list: measurements and preparations have no inverse here.
  Circuit inverse() const {
    if (!is_unitary_gateset()) throw circuit_error("cannot invert a non-unitary circuit");
    Circuit out = *this;
    out.gates.clear();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
      Gate g = *it;
      switch (g.kind) {
        case GateKind::S: g.kind = GateKind::Sdg; break;
        case GateKind::Sdg: g.kind = GateKind::S; break;
        case GateKind::T: g.kind = GateKind::Tdg; break;
        case GateKind::Tdg: g.kind = GateKind::T; break;
        case GateKind::Gadget: g.phase = static_cast<std::uint8_t>((8 - g.phase) % 8); break;
        default: break;  // self-inverse
      }
      out.gates.push_back(std::move(g));
    }
    return out;
  }
};

/// Replace every multiply-controlled Toffoli having more than two controls by
/// a compute/uncompute CCNOT ladder over fresh |0> auxiliaries.
inline Circuit decompose_mct(const Circuit& c) {
  bool any = std::any_of(c.gates.begin(), c.gates.end(),
                         [](const Gate& g) { return g.kind == GateKind::MCT; });
  if (!any) return c;

  Circuit out = c;
  out.gates.clear();
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::MCT) {
      out.push(g);
      continue;
    }
    int k = static_cast<int>(g.qubits.size()) - 1;
    int target = g.qubits.back();
    // Conjunction ladder: aux[i] accumulates controls 0..i+1.
    std::vector<int> aux;
    std::vector<Gate> compute;
    int acc = g.qubits[0];
    for (int i = 1; i < k - 1; ++i) {
      int a = out.add_aux();
      aux.push_back(a);
      compute.push_back(Gate::ccnot(acc, g.qubits[static_cast<std::size_t>(i)], a));
      acc = a;
    }
    for (const Gate& cg : compute) out.push(cg);
    out.push(Gate::ccnot(acc, g.qubits[static_cast<std::size_t>(k - 1)], target));
    for (auto it = compute.rbegin(); it != compute.rend(); ++it) out.push(*it);
  }
  return out;
}

}  // namespace nestopt
