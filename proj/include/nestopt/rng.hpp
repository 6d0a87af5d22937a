/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace nestopt {

/// Deterministic splitmix64 generator.  We own the whole sampling path (no
/// std::uniform_int_distribution) so seeded runs are bit-identical across
/// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Unbiased uniform draw from [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniformly random size-k subset of {0,...,n-1}, returned sorted.
  std::vector<int> subset(int n, int k) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    while (static_cast<int>(out.size()) < k) {
      int q = static_cast<int>(below(static_cast<std::uint64_t>(n)));
      if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::uint64_t state_;
};

}  // namespace nestopt
