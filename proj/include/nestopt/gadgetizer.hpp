/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>
#include <vector>

#include "nestopt/circuit.hpp"
#include "nestopt/move_h.hpp"
#include "nestopt/phase_poly.hpp"

namespace nestopt {

/// One parity-phase gadget in transit through the extraction pass.  `cond`
/// is a parity set of classical bits; a nonempty set means the coefficient
/// sign flips when the parity of those outcome bits is 1.
struct PhiEntry {
  SupportSet support;
  int coeff = 0;             // mod 8, nonzero
  std::vector<int> cond;     // sorted bit ids

  bool conditioned() const { return !cond.empty(); }
};

struct ExtractResult {
  Circuit pre;                        // preparations + left-moved CNOTs
  std::vector<PhiEntry> entries;      // the homogeneous region, in order
  std::vector<Gate> measurements;     // MeasX gates in outcome-bit order
  std::vector<Gate> clifford_tail;    // right-moved CNOTs then the movables

  Circuit post(const Circuit& like) const {
    Circuit out = like;
    out.gates.clear();
    for (const Gate& g : measurements) out.gates.push_back(g);
    for (const Gate& g : clifford_tail) out.gates.push_back(g);
    return out;
  }
};

struct DecomposedCircuit {
  Circuit initial;       // Clifford stage applied first
  HomogeneousCircuit phi;
  Circuit final_stage;   // measurements, conditioned corrections, Clifford tail
  int n_original = 0;
  int delta_n = 0;
  int n_inputs = 0;
  int raw_odd_gadgets = 0;  // odd-coefficient gadgets before fusion

  /// initial ; synthesize(phi) ; final as one circuit, for verification and
  /// for `.qc` output.
  Circuit recompose() const {
    Circuit out = initial;
    Circuit diag = phi.synthesize();
    for (const Gate& g : diag.gates) out.push(g);
    for (const Gate& g : final_stage.gates) out.push(g);
    return out;
  }
};

/// Step 1: CCNOT -> (1 x 1 x H) CCZ (1 x 1 x H).
inline Circuit replace_ccnot(const Circuit& c) {
  Circuit out = c;
  out.gates.clear();
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::CCNOT) {
      int t = g.qubits[2];
      out.push(Gate::h(t));
      out.push(Gate::ccz(g.qubits[0], g.qubits[1], t));
      out.push(Gate::h(t));
    } else {
      out.push(g);
    }
  }
  return out;
}

/// Diagonal gates as parity-phase gadget lists (coefficients mod 8).
inline std::vector<std::pair<SupportSet, int>> expand_diagonal(const Gate& g) {
  std::vector<std::pair<SupportSet, int>> out;
  switch (g.kind) {
    case GateKind::T: out.push_back({SupportSet::single(g.qubits[0]), 1}); break;
    case GateKind::Tdg: out.push_back({SupportSet::single(g.qubits[0]), 7}); break;
    case GateKind::S: out.push_back({SupportSet::single(g.qubits[0]), 2}); break;
    case GateKind::Sdg: out.push_back({SupportSet::single(g.qubits[0]), 6}); break;
    case GateKind::Z: out.push_back({SupportSet::single(g.qubits[0]), 4}); break;
    case GateKind::CZ: {
      int h = g.qubits[0], j = g.qubits[1];
      out.push_back({SupportSet::single(h), 2});
      out.push_back({SupportSet::single(j), 2});
      out.push_back({SupportSet{h, j}, 6});
      break;
    }
    case GateKind::CCZ: {
      int a = g.qubits[0], b = g.qubits[1], c = g.qubits[2];
      out.push_back({SupportSet::single(a), 1});
      out.push_back({SupportSet::single(b), 1});
      out.push_back({SupportSet::single(c), 1});
      out.push_back({SupportSet{a, b}, 7});
      out.push_back({SupportSet{a, c}, 7});
      out.push_back({SupportSet{b, c}, 7});
      out.push_back({SupportSet{a, b, c}, 1});
      break;
    }
    default:
      throw circuit_error("expand_diagonal: unsupported gate kind");
  }
  return out;
}

/// Step 3a: replace every diagonal gate by its gadget expansion.
inline Circuit expand_diagonals(const Circuit& c) {
  Circuit out = c;
  out.gates.clear();
  for (const Gate& g : c.gates) {
    if (g.is_diagonal() && g.kind != GateKind::Gadget) {
      for (auto& [s, k] : expand_diagonal(g)) out.push(Gate::gadget(s, k));
    } else {
      out.push(g);
    }
  }
  return out;
}

/// Step 3b: replace every H with the measurement-based gadget
///   prep|-y>(a) ; SWAP(q,a) ; D_{ {q,a},2 } ; D^-1_{ {a},2 } ; MeasX(a)->s ;
///   X(q) conditioned on s.
/// Post-selected on s = 0 this equals H on q exactly.
inline Circuit hadamard_gadgetize(Circuit main, int* delta_n = nullptr) {
  int added = 0;
  std::vector<Gate> gates = std::move(main.gates);
  main.gates.clear();
  for (Gate& g : gates) {
    if (g.kind != GateKind::H) {
      main.gates.push_back(std::move(g));
      continue;
    }
    int q = g.qubits[0];
    int a = main.add_aux();
    int s = main.add_bit();
    ++added;
    main.push(Gate::prep_minus_y(a));
    main.push(Gate::swap(q, a));
    main.push(Gate::gadget(SupportSet{q, a}, 2));
    main.push(Gate::gadget(SupportSet::single(a), 6));
    main.push(Gate::meas_x(a, s));
    main.push(Gate::cond(CondKind::X, q, {s}));
  }
  if (delta_n) *delta_n = added;
  return main;
}

namespace detail {

struct ExtractItem {
  bool is_gadget = false;
  Gate gate;       // X / CNOT / SWAP / MeasX / CondClifford
  PhiEntry entry;  // when is_gadget
};

inline std::vector<int> xor_bits(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_movable(const Gate& g) {
  switch (g.kind) {
    case GateKind::X:
    case GateKind::SWAP:
    case GateKind::MeasX:
    case GateKind::CondClifford:
      return true;
    default:
      return false;
  }
}

}  // namespace detail

/// Step 4: commute everything that is not a phase gadget out of the main
/// body.  SWAP/X/measurement/conditioned gates move right, preparations move
/// left, and each CNOT moves by the P/M heuristic, cascading non-commuting
/// CNOTs rightward.  Gadgets transform en route by the conjugation rules.
inline ExtractResult extract_clifford(const Circuit& main) {
  using detail::ExtractItem;
  ExtractResult res;
  res.pre = main;
  res.pre.gates.clear();

  std::vector<ExtractItem> items;
  items.reserve(main.gates.size());
  for (const Gate& g : main.gates) {
    switch (g.kind) {
      case GateKind::Gadget: {
        ExtractItem it;
        it.is_gadget = true;
        it.entry.support = g.support;
        it.entry.coeff = g.phase;
        items.push_back(std::move(it));
        break;
      }
      case GateKind::PrepPlus:
      case GateKind::PrepMinusY:
        res.pre.gates.push_back(g);  // fresh wires: nothing earlier touches them
        break;
      case GateKind::X:
      case GateKind::CNOT:
      case GateKind::SWAP:
      case GateKind::MeasX:
        items.push_back({false, g, {}});
        break;
      case GateKind::CondClifford:
        if (g.cond_kind != CondKind::X)
          throw circuit_error("extract_clifford: unexpected conditioned kind in main body");
        items.push_back({false, g, {}});
        break;
      default:
        throw circuit_error("extract_clifford: unexpected gate kind in main body");
    }
  }

  std::deque<Gate> tail;

  // Movables exit rightward, rightmost first, so a mover only ever crosses
  // gadgets, CNOTs, and spawned X-type gates.
  for (;;) {
    std::ptrdiff_t pick = -1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(items.size()) - 1; i >= 0; --i) {
      if (!items[static_cast<std::size_t>(i)].is_gadget &&
          detail::is_movable(items[static_cast<std::size_t>(i)].gate)) {
        pick = i;
        break;
      }
    }
    if (pick < 0) break;
    Gate mover = items[static_cast<std::size_t>(pick)].gate;
    items.erase(items.begin() + pick);
    std::size_t i = static_cast<std::size_t>(pick);

    while (i < items.size()) {
      ExtractItem& it = items[i];
      if (it.is_gadget) {
        PhiEntry& e = it.entry;
        switch (mover.kind) {
          case GateKind::SWAP:
            e.support.swap_qubits(mover.qubits[0], mover.qubits[1]);
            break;
          case GateKind::X:
            if (e.support.test(mover.qubits[0])) e.coeff = (8 - e.coeff) % 8;
            break;
          case GateKind::CondClifford:
            if (e.support.test(mover.qubits[0]))
              e.cond = detail::xor_bits(e.cond, mover.cond_bits);
            break;
          case GateKind::MeasX:
            if (e.support.test(mover.qubits[0]))
              throw circuit_error("gadget acts on a measured wire");
            break;
          default:
            break;
        }
        ++i;
        continue;
      }
      Gate& g = it.gate;
      if (g.kind == GateKind::CNOT) {
        int c = g.qubits[0], t = g.qubits[1];
        if (mover.kind == GateKind::SWAP) {
          for (int& w : g.qubits) {
            if (w == mover.qubits[0])
              w = mover.qubits[1];
            else if (w == mover.qubits[1])
              w = mover.qubits[0];
          }
        } else if (mover.kind == GateKind::X && mover.qubits[0] == c) {
          ExtractItem spawn;
          spawn.gate = Gate::x(t);
          items.insert(items.begin() + static_cast<std::ptrdiff_t>(i) + 1, spawn);
          ++i;  // step past the spawn as well
        } else if (mover.kind == GateKind::CondClifford && mover.qubits[0] == c) {
          ExtractItem spawn;
          spawn.gate = Gate::cond(CondKind::X, t, mover.cond_bits);
          items.insert(items.begin() + static_cast<std::ptrdiff_t>(i) + 1, spawn);
          ++i;
        } else if (mover.kind == GateKind::MeasX && (c == mover.qubits[0] || t == mover.qubits[0])) {
          throw circuit_error("CNOT acts on a measured wire");
        }
        ++i;
        continue;
      }
      // Spawned X-type items (and nothing else) can appear to our right.
      if (g.kind == GateKind::X || g.kind == GateKind::CondClifford) {
        if (mover.kind == GateKind::SWAP) {
          int w = g.qubits[0];
          if (w == mover.qubits[0])
            g.qubits[0] = mover.qubits[1];
          else if (w == mover.qubits[1])
            g.qubits[0] = mover.qubits[0];
        } else if (mover.kind == GateKind::X && g.kind == GateKind::X &&
                   mover.qubits[0] == g.qubits[0]) {
          items.erase(items.begin() + static_cast<std::ptrdiff_t>(i));  // XX = I
          goto mover_done;
        } else if (mover.kind == GateKind::MeasX && g.qubits[0] == mover.qubits[0]) {
          // <+| X = <+| up to a branch-global sign: drop the item
          items.erase(items.begin() + static_cast<std::ptrdiff_t>(i));
          continue;
        }
        ++i;
        continue;
      }
      throw circuit_error("extract_clifford: unexpected item during movable pass");
    }
    tail.push_front(mover);
  mover_done:;
  }

  // CNOT direction pass, leftmost first.  P counts gadgets that grow under
  // the conjugation (target in the support, control not), M counts gadgets
  // that shrink (both in the support).
  std::deque<Gate> cnot_block;
  {
    std::function<void(std::size_t)> push_right = [&](std::size_t p) {
      Gate cn = items[p].gate;
      items.erase(items.begin() + static_cast<std::ptrdiff_t>(p));
      std::size_t i = p;
      while (i < items.size()) {
        if (items[i].is_gadget) {
          PhiEntry& e = items[i].entry;
          if (e.support.test(cn.qubits[1])) e.support.toggle(cn.qubits[0]);
          ++i;
          continue;
        }
        Gate& other = items[i].gate;  // another CNOT
        bool commutes = (other.qubits[0] != cn.qubits[1] && other.qubits[1] != cn.qubits[0]);
        if (commutes) {
          ++i;
        } else {
          push_right(i);  // cascade: the blocker exits first
        }
      }
      cnot_block.push_front(cn);
    };

    for (;;) {
      std::ptrdiff_t p = -1;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (!items[i].is_gadget) {
          p = static_cast<std::ptrdiff_t>(i);
          break;
        }
      }
      if (p < 0) break;
      const Gate& cn = items[static_cast<std::size_t>(p)].gate;
      int c = cn.qubits[0], t = cn.qubits[1];
      int pl = 0, ml = 0, pr = 0, mr = 0;
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(items.size()); ++i) {
        if (!items[static_cast<std::size_t>(i)].is_gadget) continue;
        const PhiEntry& e = items[static_cast<std::size_t>(i)].entry;
        if (!e.support.test(t)) continue;
        bool both = e.support.test(c);
        if (i < p)
          both ? ++ml : ++pl;
        else
          both ? ++mr : ++pr;
      }
      if (pl - ml < pr - mr) {
        // move left: conjugate every gadget before it, then exit into `pre`
        for (std::ptrdiff_t i = 0; i < p; ++i) {
          PhiEntry& e = items[static_cast<std::size_t>(i)].entry;
          if (e.support.test(t)) e.support.toggle(c);
        }
        res.pre.gates.push_back(cn);
        items.erase(items.begin() + p);
      } else {
        push_right(static_cast<std::size_t>(p));
      }
    }
  }

  for (ExtractItem& it : items) res.entries.push_back(std::move(it.entry));

  // Promote measurements to the front of the final stage (outcome-bit order);
  // everything they cross is disjoint from the measured wire by construction.
  for (const Gate& g : tail) {
    if (g.kind == GateKind::MeasX) res.measurements.push_back(g);
  }
  std::sort(res.measurements.begin(), res.measurements.end(),
            [](const Gate& a, const Gate& b) { return a.bit < b.bit; });
  for (const Gate& g : cnot_block) {
    for (const Gate& m : res.measurements)
      if (g.touches(m.qubits[0])) throw circuit_error("final CNOT touches a measured wire");
    res.clifford_tail.push_back(g);
  }
  for (const Gate& g : tail) {
    if (g.kind == GateKind::MeasX) continue;
    res.clifford_tail.push_back(g);
  }
  return res;
}

namespace detail {

/// Realize a conditioned Clifford-phase gadget as a CNOT ladder, one
/// conditioned phase gate, and the mirrored ladder.
inline void append_cond_gadget(std::vector<Gate>& out, const SupportSet& s, int even_coeff,
                               const std::vector<int>& bits) {
  std::vector<int> qs = s.indices();
  int target = qs.back();
  for (std::size_t i = 0; i + 1 < qs.size(); ++i) out.push_back(Gate::cnot(qs[i], target));
  switch (((even_coeff % 8) + 8) % 8) {
    case 2: out.push_back(Gate::cond(CondKind::S, target, bits)); break;
    case 4: out.push_back(Gate::cond(CondKind::Z, target, bits)); break;
    case 6: out.push_back(Gate::cond(CondKind::Sdg, target, bits)); break;
    default: throw circuit_error("conditioned gadget coefficient must be even and nonzero");
  }
  for (std::size_t i = qs.size() - 1; i-- > 0;) out.push_back(Gate::cnot(qs[i], target));
}

}  // namespace detail

/// Steps 1-5: CCNOT rewriting, tripartite split, gadgetization, Clifford
/// extraction, fusion.  Returns the three-stage decomposition.
inline DecomposedCircuit run_pipeline_stages_1_to_5(const Circuit& input,
                                                    std::int64_t fuel = kDefaultMoveHFuel) {
  Circuit c = decompose_mct(input);
  c = replace_ccnot(c);
  TripartiteCircuit tri = split_tripartite(c, fuel);

  Circuit main = expand_diagonals(tri.main);
  int delta_n = 0;
  main = hadamard_gadgetize(std::move(main), &delta_n);
  const int n_total = main.n_total;

  ExtractResult ext = extract_clifford(main);

  DecomposedCircuit dec;
  dec.n_original = c.n_total;
  dec.n_inputs = input.n_inputs;
  dec.delta_n = delta_n;
  dec.phi = HomogeneousCircuit(n_total);

  // Fusion: unconditioned parts into the hash table; conditioned residues
  // join their measurement block in the final stage.
  struct Residue {
    SupportSet s;
    int coeff;
    std::vector<int> bits;
    int max_bit;
  };
  std::vector<Residue> residues;
  for (const PhiEntry& e : ext.entries) {
    if (e.coeff % 2) ++dec.raw_odd_gadgets;
    dec.phi.add_gadget(e.support, e.coeff);
    if (e.conditioned()) {
      int rc = (8 - 2 * e.coeff % 8 + 8) % 8;
      if (rc != 0)
        residues.push_back({e.support, rc, e.cond, e.cond.back()});
    }
  }

  // Assemble stages on the full register.
  auto lift = [&](const Circuit& stage) {
    Circuit out = main;  // right qubit count, labels, bit count
    out.gates = stage.gates;
    return out;
  };
  dec.initial = lift(tri.initial);
  for (const Gate& g : ext.pre.gates) dec.initial.gates.push_back(g);

  dec.final_stage = lift(Circuit{});
  dec.final_stage.gates.clear();
  for (const Gate& m : ext.measurements) {
    dec.final_stage.gates.push_back(m);
    for (const Residue& r : residues)
      if (r.max_bit == m.bit) detail::append_cond_gadget(dec.final_stage.gates, r.s, r.coeff, r.bits);
  }
  for (const Gate& g : ext.clifford_tail) dec.final_stage.gates.push_back(g);
  for (const Gate& g : tri.final_stage.gates) dec.final_stage.gates.push_back(g);

  // The initial/final circuits act on the enlarged register too.
  dec.initial.n_total = n_total;
  dec.initial.labels = main.labels;
  dec.initial.bit_count = main.bit_count;
  dec.final_stage.n_total = n_total;
  dec.final_stage.labels = main.labels;
  dec.final_stage.bit_count = main.bit_count;
  return dec;
}

}  // namespace nestopt
