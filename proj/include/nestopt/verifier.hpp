/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nestopt/circuit.hpp"
#include "nestopt/phase_poly.hpp"

namespace nestopt {

struct EquivalenceReport {
  bool equivalent = false;
  double max_deviation = 0.0;
  std::complex<double> global_phase{1.0, 0.0};  // meaningful when equivalent
  std::optional<std::uint64_t> basis_witness;   // meaningful when not
};

class verifier_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive phase-function comparison of two diagonal stages.
inline EquivalenceReport diag_equiv(const HomogeneousCircuit& h1, const HomogeneousCircuit& h2) {
  if (h1.n() != h2.n()) throw verifier_error("diag_equiv: qubit counts differ");
  if (h1.n() > HomogeneousCircuit::kOracleLimit)
    throw verifier_error("diag_equiv: circuit too large for the exhaustive oracle");
  EquivalenceReport rep;
  std::uint64_t total = std::uint64_t{1} << h1.n();
  for (std::uint64_t z = 0; z < total; ++z) {
    if (h1.phase_at(z) != h2.phase_at(z)) {
      rep.equivalent = false;
      rep.max_deviation = 1.0;
      rep.basis_witness = z;
      return rep;
    }
  }
  rep.equivalent = true;
  return rep;
}

/// Dense statevector simulator used as the independent numeric oracle.
/// All classical bits are pinned to 0: every X-basis measurement is projected
/// onto its |+> branch and conditioned corrections therefore never fire.
class Simulator {
 public:
  using cplx = std::complex<double>;

  static constexpr int kMaxQubits = 14;  // dense bound; verifier API enforces 12

  explicit Simulator(int n_qubits) : n_(n_qubits) {
    if (n_ > kMaxQubits) throw verifier_error("statevector limited to 14 qubits");
    amps_.assign(std::size_t{1} << n_, cplx{0.0, 0.0});
  }

  void set_basis_state(std::uint64_t z) {
    std::fill(amps_.begin(), amps_.end(), cplx{0.0, 0.0});
    amps_[z] = 1.0;
  }

  const std::vector<cplx>& amplitudes() const { return amps_; }

  void apply(const Gate& g) {
    switch (g.kind) {
      case GateKind::X: apply_x(g.qubits[0]); break;
      case GateKind::Z: apply_phase_if(bit(g.qubits[0]), cplx{-1, 0}); break;
      case GateKind::S: apply_phase_if(bit(g.qubits[0]), cplx{0, 1}); break;
      case GateKind::Sdg: apply_phase_if(bit(g.qubits[0]), cplx{0, -1}); break;
      case GateKind::T: apply_phase_if(bit(g.qubits[0]), omega()); break;
      case GateKind::Tdg: apply_phase_if(bit(g.qubits[0]), std::conj(omega())); break;
      case GateKind::H: apply_h(g.qubits[0]); break;
      case GateKind::CNOT: apply_cnot(g.qubits[0], g.qubits[1]); break;
      case GateKind::CZ: apply_phase_if(bit(g.qubits[0]) | bit(g.qubits[1]), cplx{-1, 0}, true); break;
      case GateKind::SWAP: apply_swap(g.qubits[0], g.qubits[1]); break;
      case GateKind::CCNOT: apply_mct(g.qubits); break;
      case GateKind::CCZ:
        apply_phase_if(bit(g.qubits[0]) | bit(g.qubits[1]) | bit(g.qubits[2]), cplx{-1, 0}, true);
        break;
      case GateKind::MCT: apply_mct(g.qubits); break;
      case GateKind::PrepPlus: apply_h(g.qubits[0]); break;
      case GateKind::PrepMinusY:
        apply_h(g.qubits[0]);
        apply_phase_if(bit(g.qubits[0]), cplx{0, -1});
        break;
      case GateKind::MeasX: project_plus(g.qubits[0]); break;
      case GateKind::CondClifford: break;  // parity over all-zero bits
      case GateKind::Gadget: apply_gadget(g); break;
    }
  }

  void run(const Circuit& c) {
    for (const Gate& g : c.gates) apply(g);
  }

  double norm2() const {
    double s = 0;
    for (const cplx& a : amps_) s += std::norm(a);
    return s;
  }

 private:
  static cplx omega() {
    return cplx{std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
  }

  std::uint64_t bit(int q) const { return std::uint64_t{1} << q; }

  void apply_x(int q) {
    std::uint64_t m = bit(q);
    for (std::uint64_t z = 0; z < amps_.size(); ++z)
      if (!(z & m)) std::swap(amps_[z], amps_[z | m]);
  }

  void apply_h(int q) {
    std::uint64_t m = bit(q);
    const double r = std::numbers::sqrt2 / 2.0;
    for (std::uint64_t z = 0; z < amps_.size(); ++z) {
      if (z & m) continue;
      cplx a0 = amps_[z], a1 = amps_[z | m];
      amps_[z] = r * (a0 + a1);
      amps_[z | m] = r * (a0 - a1);
    }
  }

  // multiply amplitudes by `p` where mask bits are (all) set
  void apply_phase_if(std::uint64_t mask, cplx p, bool need_all = false) {
    for (std::uint64_t z = 0; z < amps_.size(); ++z) {
      bool hit = need_all ? ((z & mask) == mask) : ((z & mask) != 0);
      if (hit) amps_[z] *= p;
    }
  }

  void apply_cnot(int c, int t) {
    std::uint64_t cm = bit(c), tm = bit(t);
    for (std::uint64_t z = 0; z < amps_.size(); ++z)
      if ((z & cm) && !(z & tm)) std::swap(amps_[z], amps_[z | tm]);
  }

  void apply_swap(int a, int b) {
    std::uint64_t am = bit(a), bm = bit(b);
    for (std::uint64_t z = 0; z < amps_.size(); ++z)
      if ((z & am) && !(z & bm)) std::swap(amps_[z ^ am ^ bm], amps_[z]);
  }

  void apply_mct(const std::vector<int>& qs) {
    std::uint64_t cm = 0;
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) cm |= bit(qs[i]);
    std::uint64_t tm = bit(qs.back());
    for (std::uint64_t z = 0; z < amps_.size(); ++z)
      if (((z & cm) == cm) && !(z & tm)) std::swap(amps_[z], amps_[z | tm]);
  }

  void apply_gadget(const Gate& g) {
    const double pi4 = std::numbers::pi / 4.0;
    cplx ph = std::polar(1.0, pi4 * static_cast<double>(g.phase));
    for (std::uint64_t z = 0; z < amps_.size(); ++z)
      if (g.support.parity_with_mask(z)) amps_[z] *= ph;
  }

  void project_plus(int q) {
    std::uint64_t m = bit(q);
    for (std::uint64_t z = 0; z < amps_.size(); ++z) {
      if (z & m) continue;
      cplx avg = 0.5 * (amps_[z] + amps_[z | m]);
      amps_[z] = avg;
      amps_[z | m] = avg;
    }
    if (norm2() < 1e-24) throw verifier_error("zero-norm post-selected branch");
  }

  int n_;
  std::vector<cplx> amps_;
};

namespace detail {

struct PostselectedMap {
  int n_inputs = 0;
  int n_aux = 0;
  // columns indexed by input assignment; each column is the full final state
  std::vector<std::vector<Simulator::cplx>> columns;
};

inline PostselectedMap simulate_map(const Circuit& c) {
  PostselectedMap m;
  m.n_inputs = c.n_inputs;
  m.n_aux = c.n_total - c.n_inputs;
  std::uint64_t cols = std::uint64_t{1} << c.n_inputs;
  Simulator sim(c.n_total);
  for (std::uint64_t x = 0; x < cols; ++x) {
    sim.set_basis_state(x);
    sim.run(c);
    m.columns.push_back(sim.amplitudes());
  }
  return m;
}

/// Collapse |in> ⊗ |aux> columns to the input-register map, demanding a
/// common product state on the auxiliaries.  Returns false via `*residual`
/// exceeding the caller's tolerance when the state does not factorize.
inline std::vector<std::vector<Simulator::cplx>> collapse_aux(const PostselectedMap& m,
                                                              double* residual) {
  using cplx = Simulator::cplx;
  std::uint64_t din = std::uint64_t{1} << m.n_inputs;
  std::uint64_t daux = std::uint64_t{1} << m.n_aux;
  *residual = 0.0;
  if (m.n_aux == 0) return m.columns;

  // Reference aux state: the row of largest norm across all columns.
  std::vector<cplx> phi(daux, cplx{0, 0});
  double best = -1.0;
  for (const auto& col : m.columns) {
    for (std::uint64_t zi = 0; zi < din; ++zi) {
      double rn = 0;
      for (std::uint64_t za = 0; za < daux; ++za) rn += std::norm(col[zi + (za << m.n_inputs)]);
      if (rn > best) {
        best = rn;
        for (std::uint64_t za = 0; za < daux; ++za) phi[za] = col[zi + (za << m.n_inputs)];
      }
    }
  }
  double pn = 0;
  for (const cplx& a : phi) pn += std::norm(a);
  if (pn < 1e-24) throw verifier_error("zero-norm post-selected branch");
  double inv = 1.0 / std::sqrt(pn);
  for (cplx& a : phi) a *= inv;

  std::vector<std::vector<cplx>> out;
  out.reserve(m.columns.size());
  for (const auto& col : m.columns) {
    std::vector<cplx> u(din, cplx{0, 0});
    for (std::uint64_t zi = 0; zi < din; ++zi) {
      cplx dot{0, 0};
      for (std::uint64_t za = 0; za < daux; ++za)
        dot += col[zi + (za << m.n_inputs)] * std::conj(phi[za]);
      u[zi] = dot;
    }
    // residual of the rank-one reconstruction
    for (std::uint64_t zi = 0; zi < din; ++zi)
      for (std::uint64_t za = 0; za < daux; ++za) {
        cplx diff = col[zi + (za << m.n_inputs)] - u[zi] * phi[za];
        *residual = std::max(*residual, std::abs(diff));
      }
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace detail

/// Small-scale statevector equivalence with |+> post-selection on every
/// X-basis measurement.  Compares the induced input-register maps up to one
/// global complex scalar.
inline EquivalenceReport circuit_equiv_postselected(const Circuit& c1, const Circuit& c2,
                                                    double tol = 1e-9) {
  if (c1.n_inputs != c2.n_inputs)
    throw verifier_error("circuit_equiv: input registers differ in size");
  if (c1.n_total > 12 || c2.n_total > 12)
    throw verifier_error("circuit_equiv: circuit exceeds the 12-qubit dense bound");

  double r1 = 0, r2 = 0;
  auto m1 = detail::collapse_aux(detail::simulate_map(c1), &r1);
  auto m2 = detail::collapse_aux(detail::simulate_map(c2), &r2);

  // Least-squares global scalar aligning the two maps.
  std::complex<double> num{0, 0};
  double den = 0;
  for (std::size_t x = 0; x < m1.size(); ++x)
    for (std::size_t z = 0; z < m1[x].size(); ++z) {
      num += std::conj(m1[x][z]) * m2[x][z];
      den += std::norm(m1[x][z]);
    }

  EquivalenceReport rep;
  rep.max_deviation = std::max(r1, r2);
  if (den < 1e-24) {
    // first map vanished entirely; equivalent only if the second did too
    for (std::size_t x = 0; x < m2.size(); ++x)
      for (const auto& a : m2[x]) rep.max_deviation = std::max(rep.max_deviation, std::abs(a));
    rep.equivalent = rep.max_deviation <= tol;
    return rep;
  }
  std::complex<double> lambda = num / den;
  for (std::size_t x = 0; x < m1.size(); ++x)
    for (std::size_t z = 0; z < m1[x].size(); ++z) {
      double d = std::abs(lambda * m1[x][z] - m2[x][z]);
      if (d > rep.max_deviation) {
        rep.max_deviation = d;
        if (d > tol && !rep.basis_witness) rep.basis_witness = static_cast<std::uint64_t>(x);
      }
    }
  rep.equivalent = rep.max_deviation <= tol;
  if (rep.equivalent) {
    double mag = std::abs(lambda);
    rep.global_phase = mag > 0 ? lambda / mag : std::complex<double>{1, 0};
    rep.basis_witness.reset();
  } else if (!rep.basis_witness) {
    rep.basis_witness = 0;
  }
  return rep;
}

}  // namespace nestopt
