/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "nestopt/circuit.hpp"
#include "nestopt/support_set.hpp"

namespace nestopt {

/// The commuting diagonal stage: a map from gadget supports to phase
/// coefficients in Z8 (units of pi/4).  Zero coefficients are never stored,
/// and the empty support (a global phase) is dropped throughout.
class HomogeneousCircuit {
 public:
  using Map = std::unordered_map<SupportSet, std::uint8_t, SupportSetHash>;

  HomogeneousCircuit() = default;
  explicit HomogeneousCircuit(int n) : n_(n) {}

  int n() const { return n_; }
  const Map& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  std::uint8_t coeff(const SupportSet& s) const {
    auto it = coeffs_.find(s);
    return it == coeffs_.end() ? 0 : it->second;
  }

  /// Fuse one gadget into the table: coeffs[s] += phase (mod 8).
  void add_gadget(const SupportSet& s, int phase) {
    if (s.empty()) throw std::invalid_argument("gadget support must be nonempty");
    if (s.max_index() >= n_) throw std::invalid_argument("gadget support exceeds qubit count");
    int p = ((phase % 8) + 8) % 8;
    if (p == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(s, static_cast<std::uint8_t>(p));
    if (!inserted) {
      int v = (it->second + p) % 8;
      if (v == 0)
        coeffs_.erase(it);
      else
        it->second = static_cast<std::uint8_t>(v);
    }
  }

  /// Number of odd-coefficient gadgets: the T-count of the stage.
  int t_count() const {
    int c = 0;
    for (const auto& [s, v] : coeffs_)
      if (v % 2) ++c;
    return c;
  }

  /// Phase polynomial value at a basis assignment (low 64 qubits as a mask).
  int phase_at(std::uint64_t z) const {
    int acc = 0;
    for (const auto& [s, v] : coeffs_)
      if (s.parity_with_mask(z)) acc += v;
    return acc % 8;
  }

  static constexpr int kOracleLimit = 20;

  /// Exhaustive check that the phase function vanishes on every assignment.
  bool is_identity() const {
    if (n_ > kOracleLimit) throw std::runtime_error("is_identity oracle limited to 20 qubits");
    std::uint64_t total = std::uint64_t{1} << n_;
    for (std::uint64_t z = 0; z < total; ++z)
      if (phase_at(z) != 0) return false;
    return true;
  }

  HomogeneousCircuit compose(const HomogeneousCircuit& other) const {
    if (n_ != other.n_) throw std::invalid_argument("compose: qubit counts differ");
    HomogeneousCircuit out = *this;
    for (const auto& [s, v] : other.coeffs_) out.add_gadget(s, v);
    return out;
  }

  HomogeneousCircuit inverse() const {
    HomogeneousCircuit out(n_);
    for (const auto& [s, v] : coeffs_) out.coeffs_.emplace(s, static_cast<std::uint8_t>((8 - v) % 8));
    return out;
  }

  bool operator==(const HomogeneousCircuit& o) const { return n_ == o.n_ && coeffs_ == o.coeffs_; }

  /// Entries sorted by support (lexicographic on index lists); the stable
  /// ordering every serialization below relies on.
  std::vector<std::pair<SupportSet, std::uint8_t>> sorted_entries() const {
    std::vector<std::pair<SupportSet, std::uint8_t>> v(coeffs_.begin(), coeffs_.end());
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first.lex_less(b.first); });
    return v;
  }

  /// Debug dump: one `{q1,q2,...}: k` line per gadget, sorted.
  std::string dump() const {
    std::string out;
    for (const auto& [s, v] : sorted_entries()) {
      out += s.str();
      out += ": ";
      out += std::to_string(static_cast<int>(v));
      out += "\n";
    }
    return out;
  }

  /// Re-synthesis to CNOT + phase gates: per gadget, a CNOT ladder folding the
  /// parity onto the highest-index wire, the single-qubit phase there, and the
  /// mirrored ladder.  One T (or T†) per odd coefficient.
  Circuit synthesize() const {
    Circuit out(n_);
    for (const auto& [s, v] : sorted_entries()) {
      std::vector<int> qs = s.indices();
      int target = qs.back();
      for (std::size_t i = 0; i + 1 < qs.size(); ++i) out.push(Gate::cnot(qs[i], target));
      append_phase(out, target, v);
      for (std::size_t i = qs.size() - 1; i-- > 0;) out.push(Gate::cnot(qs[i], target));
    }
    return out;
  }

  /// Phase gate sequence realizing diag(1, e^{i pi k/4}) on wire q.
  static void append_phase(Circuit& c, int q, int k) {
    switch (((k % 8) + 8) % 8) {
      case 0: break;
      case 1: c.push(Gate::t(q)); break;
      case 2: c.push(Gate::s(q)); break;
      case 3: c.push(Gate::s(q)); c.push(Gate::t(q)); break;
      case 4: c.push(Gate::z(q)); break;
      case 5: c.push(Gate::z(q)); c.push(Gate::t(q)); break;
      case 6: c.push(Gate::sdg(q)); break;
      case 7: c.push(Gate::tdg(q)); break;
    }
  }

 private:
  int n_ = 0;
  Map coeffs_;
};

}  // namespace nestopt
