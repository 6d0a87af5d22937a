/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nestopt/circuit.hpp"

namespace nestopt {

struct MoveHResult {
  Circuit clifford_tail;  // what was extracted past the end (H gates)
  Circuit body;           // everything before it
  bool fuel_exhausted = false;
};

struct TripartiteCircuit {
  Circuit initial;  // Clifford-only
  Circuit main;
  Circuit final_stage;  // Clifford-only
};

namespace detail {

inline int phase_units(GateKind k) {
  switch (k) {
    case GateKind::T: return 1;
    case GateKind::S: return 2;
    case GateKind::Z: return 4;
    case GateKind::Sdg: return 6;
    case GateKind::Tdg: return 7;
    default: return -1;
  }
}

inline bool is_phase_kind(GateKind k) { return phase_units(k) >= 0; }

/// Rule engine that pushes Hadamard gates rightward.  Rewrites consume fuel;
/// plain commutations past disjoint gates do not.  On fuel exhaustion the
/// caller falls back to the unmodified circuit.
class HadamardMover {
 public:
  HadamardMover(std::vector<Gate> gates, std::int64_t fuel)
      : g_(std::move(gates)), fuel_(fuel) {}

  bool run() {
    for (;;) {
      std::uint64_t before = edits_;
      for (std::size_t i = 0; i < g_.size();) {
        if (fuel_ <= 0) return false;
        if (g_[i].kind == GateKind::H) {
          std::size_t pos = i;
          Outcome r = push_h(i, &pos, 0);
          if (r == Outcome::kConsumed) continue;  // i now points at the next gate
          i = pos + 1;
        } else {
          ++i;
        }
      }
      if (edits_ == before) return true;
      if (fuel_ <= 0) return false;
    }
  }

  std::vector<Gate> take() { return std::move(g_); }

 private:
  enum class Outcome { kConsumed, kRest };  // kRest: stopped somewhere (incl. end)

  static constexpr int kMaxDepth = 256;

  bool spend() {
    ++edits_;
    return --fuel_ > 0;
  }

  int wire_of(const Gate& g) const { return g.qubits[0]; }

  // first index > from whose gate touches any of the listed wires
  std::optional<std::size_t> next_touching(std::size_t from, std::initializer_list<int> ws) const {
    for (std::size_t j = from + 1; j < g_.size(); ++j)
      for (int w : ws)
        if (g_[j].touches(w)) return j;
    return std::nullopt;
  }

  // move gate at i directly before position j (commuting past i+1..j-1)
  std::size_t slide_to(std::size_t i, std::size_t j) {
    std::rotate(g_.begin() + static_cast<std::ptrdiff_t>(i),
                g_.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                g_.begin() + static_cast<std::ptrdiff_t>(j));
    return j - 1;
  }

  void insert_phase(std::size_t at, int w, int k) {
    std::vector<Gate> seq;
    switch (((k % 8) + 8) % 8) {
      case 0: break;
      case 1: seq = {Gate::t(w)}; break;
      case 2: seq = {Gate::s(w)}; break;
      case 3: seq = {Gate::s(w), Gate::t(w)}; break;
      case 4: seq = {Gate::z(w)}; break;
      case 5: seq = {Gate::z(w), Gate::t(w)}; break;
      case 6: seq = {Gate::sdg(w)}; break;
      case 7: seq = {Gate::tdg(w)}; break;
    }
    g_.insert(g_.begin() + static_cast<std::ptrdiff_t>(at), seq.begin(), seq.end());
  }

  /// Push the H at index i as far right as possible.
  Outcome push_h(std::size_t i, std::size_t* out_pos, int depth) {
    int w = wire_of(g_[i]);
    for (;;) {
      if (fuel_ <= 0 || depth > kMaxDepth) {
        *out_pos = i;
        return Outcome::kRest;
      }
      auto nxt = next_touching(i, {w});
      if (!nxt) {
        i = slide_to(i, g_.size());
        *out_pos = i;
        return Outcome::kRest;
      }
      i = slide_to(i, *nxt);  // H now adjacent to its blocker
      Gate& b = g_[i + 1];

      if (b.kind == GateKind::H) {  // HH -> I
        spend();
        g_.erase(g_.begin() + static_cast<std::ptrdiff_t>(i),
                 g_.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        *out_pos = i;
        return Outcome::kConsumed;
      }
      if (b.kind == GateKind::X) {  // HX -> ZH
        spend();
        g_[i] = Gate::z(w);
        g_[i + 1] = Gate::h(w);
        i = i + 1;
        continue;
      }
      if (b.kind == GateKind::Z) {  // HZ -> XH
        spend();
        g_[i] = Gate::x(w);
        g_[i + 1] = Gate::h(w);
        i = i + 1;
        continue;
      }
      if (is_phase_kind(b.kind) && b.kind != GateKind::Z) {
        // Try to clear the phase run out of the way first.
        push_phase(i + 1, depth + 1);
        auto n2 = next_touching(i, {w});
        if (!n2) continue;
        Gate& b2 = g_[*n2];
        if (!is_phase_kind(b2.kind)) continue;  // phase moved; retry from the top
        int k = phase_units(b2.kind);
        if (k == 4) continue;  // plain Z: handled by the HZ rule on the next spin
        if (k == 2 || k == 6) {
          // HSH substitution, attempted only if a trailing H is stuck here.
          std::size_t pj = *n2;
          auto n3 = next_touching(pj, {w});
          if (n3 && g_[*n3].kind == GateKind::H) {
            std::size_t hpos;
            if (push_h(*n3, &hpos, depth + 1) == Outcome::kConsumed) continue;
            auto n3b = next_touching(pj, {w});
            if (n3b && g_[*n3b].kind == GateKind::H) {
              std::size_t h2 = slide_to(*n3b, pj + 2);  // bring it adjacent to the phase
              spend();
              // HSH = Sdg H Sdg, HS*H = S H S (up to a global phase)
              GateKind outer = (k == 2) ? GateKind::Sdg : GateKind::S;
              g_[i] = Gate::simple(outer, {w});
              g_[pj] = Gate::h(w);
              g_[h2] = Gate::simple(outer, {w});
              i = pj;  // keep pushing the fresh H
              continue;
            }
          }
        }
        *out_pos = i;
        return Outcome::kRest;  // odd phase (or no follow-up H): genuinely stuck
      }
      if (b.kind == GateKind::CNOT) {
        int c = b.qubits[0], t = b.qubits[1];
        if (t == w) {  // H on target: CNOT <-> CZ
          spend();
          g_[i] = Gate::cz(c, t);
          g_[i + 1] = Gate::h(w);
          i = i + 1;
          continue;
        }
        // H on the control: try the two-H substitutions.
        auto nh = next_touching(i + 1, {w, t});
        if (nh && g_[*nh].kind == GateKind::H) {
          int hw = wire_of(g_[*nh]);
          std::size_t hpos;
          if (push_h(*nh, &hpos, depth + 1) == Outcome::kConsumed) continue;
          auto nh2 = next_touching(i + 1, {w, t});
          if (nh2 && g_[*nh2].kind == GateKind::H && wire_of(g_[*nh2]) == hw) {
            std::vector<Gate> snapshot = g_;
            std::int64_t fuel_before = fuel_;
            std::size_t h2 = slide_to(*nh2, i + 3);  // adjacent: [H, CNOT, H]
            spend();
            if (hw == w) {  // R1: H_w CNOT_{w,t} H_w = H_t CNOT_{t,w} H_t
              g_[i] = Gate::h(t);
              g_[i + 1] = Gate::cnot(t, w);
              g_[h2] = Gate::h(t);
            } else {  // R2: H_w CNOT_{w,t} H_t = H_t CNOT_{t,w} H_w
              g_[i] = Gate::h(t);
              g_[i + 1] = Gate::cnot(t, w);
              g_[h2] = Gate::h(w);
            }
            std::size_t tail_pos;
            std::size_t before_size = g_.size();
            Outcome tr = push_h(h2, &tail_pos, depth + 1);
            bool progressed = (tr == Outcome::kConsumed) || g_.size() < before_size ||
                              tail_pos > h2;
            if (progressed) {
              i = i;  // leading H re-examined by the outer scan
              *out_pos = i;
              return Outcome::kRest;
            }
            g_ = std::move(snapshot);  // no progress: undo
            fuel_ = fuel_before - 1;
          }
        }
        // Last resort: try to push the CNOT itself out of the way.
        if (push_cnot(i + 1, depth + 1)) continue;
        *out_pos = i;
        return Outcome::kRest;
      }
      if (b.kind == GateKind::CZ) {  // H on a CZ wire: CZ <-> CNOT
        spend();
        int other = (b.qubits[0] == w) ? b.qubits[1] : b.qubits[0];
        g_[i] = Gate::cnot(other, w);
        g_[i + 1] = Gate::h(w);
        i = i + 1;
        continue;
      }
      if (b.kind == GateKind::SWAP) {  // H rides through to the partner wire
        spend();
        int p = b.qubits[0], q = b.qubits[1];
        Gate sw = b;
        g_[i] = sw;
        g_[i + 1] = Gate::h(w == p ? q : p);
        w = (w == p) ? q : p;
        i = i + 1;
        continue;
      }
      if (b.kind == GateKind::CCZ) {
        if (push_ccz(i + 1, depth + 1)) continue;
        *out_pos = i;
        return Outcome::kRest;
      }
      *out_pos = i;
      return Outcome::kRest;  // measurement/preparation or other: no rule
    }
  }

  /// Push a single-qubit phase accumulation rightward.  The phase travels as
  /// an integer (mod 8) and re-materializes as gates where it stops.
  void push_phase(std::size_t j, int depth) {
    int w = wire_of(g_[j]);
    int k = phase_units(g_[j].kind);
    g_.erase(g_.begin() + static_cast<std::ptrdiff_t>(j));
    std::size_t pos = j;  // gates [pos, ...) have not been crossed yet
    for (;;) {
      if (fuel_ <= 0 || depth > kMaxDepth) break;
      if (k == 0) return;
      std::size_t scan = pos;
      while (scan < g_.size() && !g_[scan].touches(w)) ++scan;
      if (scan == g_.size()) {
        pos = scan;
        break;
      }
      Gate& b = g_[scan];
      if (is_phase_kind(b.kind)) {
        spend();
        k = (k + phase_units(b.kind)) % 8;
        g_.erase(g_.begin() + static_cast<std::ptrdiff_t>(scan));
        pos = scan;
        continue;
      }
      if (b.kind == GateKind::X) {
        spend();
        k = (8 - k) % 8;
        pos = scan + 1;
        continue;
      }
      if (b.kind == GateKind::CZ || b.kind == GateKind::CCZ ||
          (b.kind == GateKind::CNOT && b.qubits[0] == w)) {
        pos = scan + 1;  // diagonal-compatible: commute
        continue;
      }
      if (b.kind == GateKind::SWAP) {
        spend();
        w = (b.qubits[0] == w) ? b.qubits[1] : b.qubits[0];
        pos = scan + 1;
        continue;
      }
      if (b.kind == GateKind::H) {
        std::size_t hpos;
        if (push_h(scan, &hpos, depth + 1) == Outcome::kConsumed) continue;
        if (hpos != scan) continue;   // it moved; rescan
        pos = scan;                   // stuck before the H
        break;
      }
      pos = scan;  // CNOT target or anything else: stop here
      break;
    }
    insert_phase(pos, w, k);
  }

  /// Push a CCZ rightward past everything it commutes with.  Returns true if
  /// it moved (or cancelled), false if a genuine blocker remains.
  bool push_ccz(std::size_t j, int depth) {
    std::size_t start = j;
    for (;;) {
      if (fuel_ <= 0 || depth > kMaxDepth) return j != start;
      const std::vector<int> ws = g_[j].qubits;
      std::size_t scan = j + 1;
      while (scan < g_.size()) {
        const Gate& b = g_[scan];
        bool touches = false;
        for (int w : ws) touches = touches || b.touches(w);
        if (!touches) {
          ++scan;
          continue;
        }
        if (b.kind == GateKind::CCZ) {
          std::vector<int> a = ws, c = b.qubits;
          std::sort(a.begin(), a.end());
          std::sort(c.begin(), c.end());
          if (a == c) {  // CCZ . CCZ = I
            spend();
            g_.erase(g_.begin() + static_cast<std::ptrdiff_t>(scan));
            g_.erase(g_.begin() + static_cast<std::ptrdiff_t>(j));
            return true;
          }
          ++scan;  // distinct CCZs commute
          continue;
        }
        if (b.is_diagonal() || (b.kind == GateKind::CNOT &&
                                std::find(ws.begin(), ws.end(), b.qubits[1]) == ws.end())) {
          ++scan;
          continue;
        }
        break;
      }
      if (scan >= g_.size()) {
        j = slide_to(j, g_.size());
        return j != start;
      }
      j = slide_to(j, scan);  // adjacent to the blocker
      Gate& b = g_[j + 1];
      if (b.kind == GateKind::X) {
        spend();
        int xw = b.qubits[0];
        std::vector<int> rest;
        for (int w : g_[j].qubits)
          if (w != xw) rest.push_back(w);
        Gate ccz = g_[j];
        g_[j] = b;
        g_[j + 1] = ccz;
        g_.insert(g_.begin() + static_cast<std::ptrdiff_t>(j) + 1, Gate::cz(rest[0], rest[1]));
        j = j + 2;
        continue;
      }
      if (b.kind == GateKind::SWAP) {
        spend();
        Gate ccz = g_[j];
        for (int& w : ccz.qubits) {
          if (w == b.qubits[0])
            w = b.qubits[1];
          else if (w == b.qubits[1])
            w = b.qubits[0];
        }
        g_[j] = b;
        g_[j + 1] = ccz;
        j = j + 1;
        continue;
      }
      if (b.kind == GateKind::H) {
        std::size_t hpos;
        if (push_h(j + 1, &hpos, depth + 1) == Outcome::kConsumed) continue;
        if (hpos != j + 1) continue;
        return j != start;
      }
      return j != start;  // CNOT writing onto a CCZ wire: stop
    }
  }

  /// Modest CNOT push used when an H is otherwise stuck on a control.
  bool push_cnot(std::size_t j, int depth) {
    std::size_t start = j;
    for (;;) {
      if (fuel_ <= 0 || depth > kMaxDepth) return j != start;
      int c = g_[j].qubits[0], t = g_[j].qubits[1];
      std::size_t scan = j + 1;
      while (scan < g_.size()) {
        const Gate& b = g_[scan];
        if (!b.touches(c) && !b.touches(t)) {
          ++scan;
          continue;
        }
        bool commutes = false;
        if (b.kind == GateKind::CNOT)
          commutes = (b.qubits[0] != t && b.qubits[1] != c);
        else if (b.is_diagonal())
          commutes = !b.touches(t);
        else if (b.kind == GateKind::X)
          commutes = !b.touches(c);
        if (!commutes) break;
        ++scan;
      }
      if (scan >= g_.size()) {
        j = slide_to(j, g_.size());
        return j != start;
      }
      j = slide_to(j, scan);
      Gate& b = g_[j + 1];
      if (b.kind == GateKind::CNOT && b.qubits[0] == c && b.qubits[1] == t) {
        spend();
        g_.erase(g_.begin() + static_cast<std::ptrdiff_t>(j),
                 g_.begin() + static_cast<std::ptrdiff_t>(j) + 2);
        return true;
      }
      if (b.kind == GateKind::H && b.qubits[0] == t) {  // CNOT H_t -> H_t CZ
        spend();
        g_[j] = Gate::h(t);
        g_[j + 1] = Gate::cz(c, t);
        j = j + 1;
        continue;
      }
      if (b.kind == GateKind::SWAP) {
        spend();
        Gate cn = g_[j];
        for (int& w : cn.qubits) {
          if (w == b.qubits[0])
            w = b.qubits[1];
          else if (w == b.qubits[1])
            w = b.qubits[0];
        }
        g_[j] = b;
        g_[j + 1] = cn;
        j = j + 1;
        continue;
      }
      return j != start;
    }
  }

  std::vector<Gate> g_;
  std::int64_t fuel_;
  std::uint64_t edits_ = 0;
};

}  // namespace detail

inline constexpr std::int64_t kDefaultMoveHFuel = 1'000'000;

/// Push H gates to the end of the circuit; split off the trailing H run as
/// the Clifford tail.  On fuel exhaustion the input is returned unchanged.
inline MoveHResult move_h(const Circuit& c, std::int64_t fuel = kDefaultMoveHFuel) {
  for (const Gate& g : c.gates)
    if (g.kind == GateKind::CCNOT || g.kind == GateKind::MCT)
      throw circuit_error("move_h expects a CCNOT-free circuit");

  detail::HadamardMover mover(c.gates, fuel);
  MoveHResult res;
  res.body = c;
  res.clifford_tail = c;
  res.clifford_tail.gates.clear();
  if (!mover.run()) {
    res.fuel_exhausted = true;
    return res;  // untouched input, empty tail
  }
  std::vector<Gate> gates = mover.take();
  std::size_t cut = gates.size();
  while (cut > 0 && gates[cut - 1].kind == GateKind::H) --cut;
  res.body.gates.assign(gates.begin(), gates.begin() + static_cast<std::ptrdiff_t>(cut));
  res.clifford_tail.gates.assign(gates.begin() + static_cast<std::ptrdiff_t>(cut), gates.end());
  return res;
}

/// The two-sided split: apply move_h to the circuit and to the inverse of its
/// body, yielding Clifford-only initial and final stages.
inline TripartiteCircuit split_tripartite(const Circuit& c,
                                          std::int64_t fuel = kDefaultMoveHFuel) {
  MoveHResult first = move_h(c, fuel);
  MoveHResult second = move_h(first.body.inverse(), fuel);
  TripartiteCircuit out;
  out.initial = second.clifford_tail.inverse();
  out.main = second.body.inverse();
  out.final_stage = first.clifford_tail;
  return out;
}

}  // namespace nestopt
