/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#include <catch2/catch_amalgamated.hpp>

#include "nestopt/move_h.hpp"
#include "nestopt/rng.hpp"
#include "nestopt/verifier.hpp"

using namespace nestopt;

namespace {

Circuit recombine(const Circuit& body, const Circuit& tail) {
  Circuit out = body;
  for (const Gate& g : tail.gates) out.push(g);
  return out;
}

Circuit recombine(const TripartiteCircuit& t) {
  Circuit out = t.initial;
  for (const Gate& g : t.main.gates) out.push(g);
  for (const Gate& g : t.final_stage.gates) out.push(g);
  return out;
}

Circuit random_ccnot_free(Rng& rng, int n, int len) {
  Circuit c(n);
  for (int i = 0; i < len; ++i) {
    int q = static_cast<int>(rng.below(n));
    int r = static_cast<int>(rng.below(n - 1));
    if (r >= q) ++r;
    switch (rng.below(11)) {
      case 0: c.push(Gate::x(q)); break;
      case 1: c.push(Gate::z(q)); break;
      case 2: c.push(Gate::s(q)); break;
      case 3: c.push(Gate::sdg(q)); break;
      case 4: c.push(Gate::t(q)); break;
      case 5: c.push(Gate::tdg(q)); break;
      case 6: c.push(Gate::h(q)); break;
      case 7: c.push(Gate::cnot(q, r)); break;
      case 8: c.push(Gate::cz(q, r)); break;
      case 9: c.push(Gate::swap(q, r)); break;
      default: {
        if (n >= 3) {
          int u = static_cast<int>(rng.below(n - 2));
          if (u >= std::min(q, r)) ++u;
          if (u >= std::max(q, r)) ++u;
          c.push(Gate::ccz(q, r, u));
        }
        break;
      }
    }
  }
  return c;
}

}  // namespace

TEST_CASE("move_h fixed examples") {
  SECTION("HH cancels") {
    Circuit c(1);
    c.push(Gate::h(0));
    c.push(Gate::h(0));
    MoveHResult r = move_h(c);
    CHECK(r.clifford_tail.gates.empty());
    CHECK(r.body.gates.empty());
  }
  SECTION("HX -> ZH") {
    Circuit c(1);
    c.push(Gate::h(0));
    c.push(Gate::x(0));
    MoveHResult r = move_h(c);
    REQUIRE(r.clifford_tail.gates.size() == 1);
    CHECK(r.clifford_tail.gates[0].kind == GateKind::H);
    REQUIRE(r.body.gates.size() == 1);
    CHECK(r.body.gates[0].kind == GateKind::Z);
  }
  SECTION("four T gates accumulate to Z, then HZ -> XH") {
    Circuit c(1);
    c.push(Gate::h(0));
    for (int i = 0; i < 4; ++i) c.push(Gate::t(0));
    MoveHResult r = move_h(c);
    REQUIRE(r.clifford_tail.gates.size() == 1);
    CHECK(r.clifford_tail.gates[0].kind == GateKind::H);
    REQUIRE(r.body.gates.size() == 1);
    CHECK(r.body.gates[0].kind == GateKind::X);
  }
  SECTION("move_h rejects CCNOT input") {
    Circuit c(3);
    c.push(Gate::ccnot(0, 1, 2));
    CHECK_THROWS_AS(move_h(c), circuit_error);
  }
}

TEST_CASE("move_h contract on random CCNOT-free circuits") {
  Rng rng(424242);
  for (int round = 0; round < 150; ++round) {
    int n = 2 + static_cast<int>(rng.below(4));  // up to 5 qubits
    Circuit c = random_ccnot_free(rng, n, 4 + static_cast<int>(rng.below(20)));
    MoveHResult r = move_h(c);
    CHECK_FALSE(r.fuel_exhausted);
    CHECK(r.clifford_tail.is_clifford_only());
    CHECK(r.body.h_count() + r.clifford_tail.h_count() <= c.h_count());
    CHECK(circuit_equiv_postselected(c, recombine(r.body, r.clifford_tail), 1e-9).equivalent);
  }
}

TEST_CASE("split_tripartite fixed examples") {
  SECTION("all-Clifford circuit leaves an H-free main") {
    Circuit c(2);
    c.push(Gate::h(0));
    c.push(Gate::cnot(0, 1));
    c.push(Gate::s(1));
    c.push(Gate::h(0));
    TripartiteCircuit t = split_tripartite(c);
    CHECK(t.initial.is_clifford_only());
    CHECK(t.final_stage.is_clifford_only());
    CHECK(t.main.h_count() == 0);
    CHECK(circuit_equiv_postselected(c, recombine(t), 1e-9).equivalent);
  }
  SECTION("[T] stays in the main body") {
    Circuit c(1);
    c.push(Gate::t(0));
    TripartiteCircuit t = split_tripartite(c);
    CHECK(t.initial.gates.empty());
    CHECK(t.final_stage.gates.empty());
    REQUIRE(t.main.gates.size() == 1);
    CHECK(t.main.gates[0].kind == GateKind::T);
  }
  SECTION("[H T H] keeps at most two Hadamards in the main body") {
    Circuit c(1);
    c.push(Gate::h(0));
    c.push(Gate::t(0));
    c.push(Gate::h(0));
    TripartiteCircuit t = split_tripartite(c);
    CHECK(t.main.h_count() <= 2);
    CHECK(t.initial.is_clifford_only());
    CHECK(t.final_stage.is_clifford_only());
    CHECK(circuit_equiv_postselected(c, recombine(t), 1e-9).equivalent);
  }
}

TEST_CASE("split_tripartite contract on random circuits") {
  Rng rng(777);
  for (int round = 0; round < 100; ++round) {
    int n = 2 + static_cast<int>(rng.below(4));
    Circuit c = random_ccnot_free(rng, n, 4 + static_cast<int>(rng.below(18)));
    TripartiteCircuit t = split_tripartite(c);
    CHECK(t.initial.is_clifford_only());
    CHECK(t.final_stage.is_clifford_only());
    int h_total = t.initial.h_count() + t.main.h_count() + t.final_stage.h_count();
    CHECK(h_total <= c.h_count());
    CHECK(circuit_equiv_postselected(c, recombine(t), 1e-9).equivalent);
  }
}

TEST_CASE("move_h with tiny fuel falls back to the unmodified circuit") {
  Rng rng(9);
  Circuit c = random_ccnot_free(rng, 4, 30);
  MoveHResult r = move_h(c, 3);
  if (r.fuel_exhausted) {
    CHECK(r.clifford_tail.gates.empty());
    CHECK(r.body.gates.size() == c.gates.size());
  }
}
