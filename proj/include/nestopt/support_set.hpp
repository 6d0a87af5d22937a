/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace nestopt {

/// A set of qubit indices, the support S of a phase gadget.
///
/// Indices below 64 live in a single machine word; larger indices spill into
/// extra words so circuits with hundreds of qubits still work.  Equality and
/// hashing are value-based, which is what the gadget hash table needs.
class SupportSet {
 public:
  SupportSet() = default;

  SupportSet(std::initializer_list<int> qubits) {
    for (int q : qubits) toggle(q);
  }

  static SupportSet single(int q) {
    SupportSet s;
    s.toggle(q);
    return s;
  }

  bool test(int q) const {
    if (q < 64) return (low_ >> q) & 1u;
    std::size_t w = static_cast<std::size_t>(q / 64) - 1;
    if (w >= high_.size()) return false;
    return (high_[w] >> (q % 64)) & 1u;
  }

  void toggle(int q) {
    if (q < 0) throw std::invalid_argument("negative qubit index");
    if (q < 64) {
      low_ ^= (std::uint64_t{1} << q);
      return;
    }
    std::size_t w = static_cast<std::size_t>(q / 64) - 1;
    if (w >= high_.size()) high_.resize(w + 1, 0);
    high_[w] ^= (std::uint64_t{1} << (q % 64));
    normalize();
  }

  void set(int q) {
    if (!test(q)) toggle(q);
  }

  bool empty() const { return low_ == 0 && high_.empty(); }

  int count() const {
    int c = std::popcount(low_);
    for (std::uint64_t w : high_) c += std::popcount(w);
    return c;
  }

  int max_index() const {
    for (std::size_t i = high_.size(); i-- > 0;) {
      if (high_[i]) return static_cast<int>((i + 1) * 64 + 63 - std::countl_zero(high_[i]));
    }
    if (low_) return 63 - std::countl_zero(low_);
    return -1;
  }

  /// Symmetric difference, the CNOT conjugation action on supports.
  SupportSet& operator^=(const SupportSet& o) {
    low_ ^= o.low_;
    if (high_.size() < o.high_.size()) high_.resize(o.high_.size(), 0);
    for (std::size_t i = 0; i < o.high_.size(); ++i) high_[i] ^= o.high_[i];
    normalize();
    return *this;
  }

  friend SupportSet operator^(SupportSet a, const SupportSet& b) {
    a ^= b;
    return a;
  }

  bool intersects(const SupportSet& o) const {
    if (low_ & o.low_) return true;
    std::size_t n = std::min(high_.size(), o.high_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (high_[i] & o.high_[i]) return true;
    return false;
  }

  /// Parity of |this ∩ other|; the core of phase-polynomial evaluation.
  int parity_with(const SupportSet& o) const {
    int p = std::popcount(low_ & o.low_);
    std::size_t n = std::min(high_.size(), o.high_.size());
    for (std::size_t i = 0; i < n; ++i) p += std::popcount(high_[i] & o.high_[i]);
    return p & 1;
  }

  /// Parity against a basis assignment in a single word (qubit count <= 64).
  int parity_with_mask(std::uint64_t z) const { return std::popcount(low_ & z) & 1; }

  /// Exchange the membership of two qubits (SWAP conjugation).
  void swap_qubits(int a, int b) {
    bool ta = test(a), tb = test(b);
    if (ta != tb) {
      toggle(a);
      toggle(b);
    }
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    std::uint64_t w = low_;
    while (w) {
      out.push_back(std::countr_zero(w));
      w &= w - 1;
    }
    for (std::size_t i = 0; i < high_.size(); ++i) {
      std::uint64_t h = high_[i];
      while (h) {
        out.push_back(static_cast<int>((i + 1) * 64) + std::countr_zero(h));
        h &= h - 1;
      }
    }
    return out;
  }

  bool operator==(const SupportSet& o) const { return low_ == o.low_ && high_ == o.high_; }
  bool operator!=(const SupportSet& o) const { return !(*this == o); }

  /// Lexicographic order on the sorted index sequence; fixes output ordering.
  bool lex_less(const SupportSet& o) const {
    auto a = indices(), b = o.indices();
    return a < b;
  }

  std::size_t hash() const {
    std::uint64_t h = mix(low_ + 0x9e3779b97f4a7c15ull);
    for (std::uint64_t w : high_) h = mix(h ^ (w + 0x9e3779b97f4a7c15ull));
    return static_cast<std::size_t>(h);
  }

  std::string str() const {
    std::string out = "{";
    bool first = true;
    for (int q : indices()) {
      if (!first) out += ",";
      out += std::to_string(q);
      first = false;
    }
    out += "}";
    return out;
  }

  std::uint64_t low_word() const { return low_; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
  }

  void normalize() {
    while (!high_.empty() && high_.back() == 0) high_.pop_back();
  }

  std::uint64_t low_ = 0;
  std::vector<std::uint64_t> high_;
};

struct SupportSetHash {
  std::size_t operator()(const SupportSet& s) const { return s.hash(); }
};

}  // namespace nestopt
