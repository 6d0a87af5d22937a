/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nestopt/phase_poly.hpp"
#include "nestopt/rng.hpp"

namespace nestopt {

/// Spider-nest identity on a support set of size >= 4: a 1-gadget with phase
/// (n-2)(n-3)/2 on each line, a 2-gadget with phase -(n-3) on each pair, a
/// 3-gadget with phase 1 on each triple, and the n-gadget with phase -1
/// (all in units of pi/4).
inline HomogeneousCircuit nest(const SupportSet& s, int n_qubits = -1) {
  std::vector<int> qs = s.indices();
  int m = static_cast<int>(qs.size());
  if (m < 4) throw std::invalid_argument("nest requires at least four qubits");
  if (n_qubits < 0) n_qubits = s.max_index() + 1;
  HomogeneousCircuit h(n_qubits);

  int single = ((m - 2) * (m - 3) / 2) % 8;
  int pair = ((-(m - 3)) % 8 + 8) % 8;
  for (int i = 0; i < m; ++i) h.add_gadget(SupportSet::single(qs[i]), single);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) h.add_gadget(SupportSet{qs[i], qs[j]}, pair);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) h.add_gadget(SupportSet{qs[i], qs[j], qs[k]}, 1);
  h.add_gadget(s, 7);
  return h;
}

/// Composite identity on a 5-qubit set: the product of nest(S)^p0 and
/// nest(S \ {q_j})^{p_j}, gadgets fused on common subsets.  `exponents` holds
/// the bit pattern p0 p1 ... p5 (p0 in the most significant position).
inline HomogeneousCircuit nest_composite(const SupportSet& s, unsigned exponents,
                                         int n_qubits = -1) {
  std::vector<int> qs = s.indices();
  if (qs.size() != 5) throw std::invalid_argument("nest_composite requires a size-5 set");
  if (exponents == 0 || exponents > 63)
    throw std::invalid_argument("exponent pattern must be a nonzero 6-bit value");
  if (n_qubits < 0) n_qubits = s.max_index() + 1;
  HomogeneousCircuit h(n_qubits);
  if ((exponents >> 5) & 1u) h = h.compose(nest(s, n_qubits));
  for (int j = 0; j < 5; ++j) {
    if (!((exponents >> (4 - j)) & 1u)) continue;
    SupportSet sj = s;
    sj.toggle(qs[static_cast<std::size_t>(j)]);
    h = h.compose(nest(sj, n_qubits));
  }
  return h;
}

struct NestTemplate {
  int arity = 0;
  HomogeneousCircuit coeffs;
  std::string label;
};

/// The 64 canonical templates: nest on four qubits plus the 63 composite
/// patterns on five qubits.
inline const std::vector<NestTemplate>& template_list() {
  static const std::vector<NestTemplate> list = [] {
    std::vector<NestTemplate> out;
    out.push_back({4, nest(SupportSet{0, 1, 2, 3}, 4), "N4"});
    for (unsigned p = 1; p <= 63; ++p) {
      std::string label = "F5:";
      for (int b = 5; b >= 0; --b) label += ((p >> b) & 1u) ? '1' : '0';
      out.push_back({5, nest_composite(SupportSet{0, 1, 2, 3, 4}, p, 5), std::move(label)});
    }
    return out;
  }();
  return list;
}

struct OptimizerConfig {
  std::uint64_t reps = 20000;
  std::uint64_t seed = 0;
};

struct OptimizeStats {
  int t_initial = 0;
  int t_final = 0;
  std::uint64_t acceptances = 0;
  double wall_seconds = 0.0;
};

namespace detail {

struct CompiledTemplate {
  int arity = 0;
  int t_count = 0;
  // gadget supports as canonical qubit index lists, plus coefficients
  std::vector<std::pair<std::vector<int>, int>> entries;
};

inline const std::vector<CompiledTemplate>& compiled_templates() {
  static const std::vector<CompiledTemplate> list = [] {
    std::vector<CompiledTemplate> out;
    for (const NestTemplate& t : template_list()) {
      CompiledTemplate ct;
      ct.arity = t.arity;
      ct.t_count = t.coeffs.t_count();
      for (const auto& [s, v] : t.coeffs.sorted_entries())
        ct.entries.emplace_back(s.indices(), static_cast<int>(v));
      out.push_back(std::move(ct));
    }
    return out;
  }();
  return list;
}

/// One PHAGE step for a concrete identity instance.  Tries both the identity
/// and its inverse, keeps the strictly better result (the J^-1 direction wins
/// ties between the two candidates; the input wins overall ties).
inline bool phage_step(HomogeneousCircuit& c,
                       const std::vector<std::pair<SupportSet, int>>& instance,
                       int instance_t_count) {
  int overlap = 0;
  for (const auto& [s, k] : instance)
    if ((k % 2) && (c.coeff(s) % 2)) ++overlap;
  if (2 * overlap < instance_t_count) return false;

  int d_minus = 0, d_plus = 0;
  for (const auto& [s, k] : instance) {
    int g = c.coeff(s);
    int odd = g % 2;
    d_minus += ((g - k + 8) % 8) % 2 - odd;
    d_plus += ((g + k) % 8) % 2 - odd;
  }
  int best = std::min(d_minus, d_plus);
  if (best >= 0) return false;
  int sign = (d_minus <= d_plus) ? -1 : +1;
  for (const auto& [s, k] : instance) c.add_gadget(s, sign * k);
  return true;
}

}  // namespace detail

/// PHAGE with a singleton family: multiply by the identity (or its inverse)
/// if that strictly lowers the T-count.
inline HomogeneousCircuit phage_singleton(const HomogeneousCircuit& c,
                                          const HomogeneousCircuit& k) {
  if (k.n() > c.n()) throw std::invalid_argument("identity instance exceeds circuit register");
  std::vector<std::pair<SupportSet, int>> instance;
  for (const auto& [s, v] : k.sorted_entries()) instance.emplace_back(s, static_cast<int>(v));
  HomogeneousCircuit out = c;
  detail::phage_step(out, instance, k.t_count());
  return out;
}

/// The randomized driver: for each of the 64 templates, `reps` uniformly
/// random subsets are drawn and the singleton PHAGE tactic applied.
inline std::pair<HomogeneousCircuit, OptimizeStats> optimize(const HomogeneousCircuit& c,
                                                             const OptimizerConfig& cfg) {
  if (c.n() < 4) throw std::invalid_argument("optimize requires at least four qubits");
  if (cfg.reps < 1) throw std::invalid_argument("reps must be at least 1");
  auto start = std::chrono::steady_clock::now();

  HomogeneousCircuit work = c;
  OptimizeStats stats;
  stats.t_initial = work.t_count();
  Rng rng(cfg.seed);

  std::vector<std::pair<SupportSet, int>> instance;
  for (const detail::CompiledTemplate& tpl : detail::compiled_templates()) {
    if (tpl.arity > c.n()) continue;
    for (std::uint64_t rep = 0; rep < cfg.reps; ++rep) {
      std::vector<int> subset = rng.subset(c.n(), tpl.arity);
      instance.clear();
      for (const auto& [idx, coeff] : tpl.entries) {
        SupportSet s;
        for (int i : idx) s.set(subset[static_cast<std::size_t>(i)]);
        instance.emplace_back(std::move(s), coeff);
      }
      if (detail::phage_step(work, instance, tpl.t_count)) ++stats.acceptances;
    }
  }

  stats.t_final = work.t_count();
  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(work), stats};
}

}  // namespace nestopt
