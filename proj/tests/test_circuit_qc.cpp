/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#include <catch2/catch_amalgamated.hpp>

#include "nestopt/circuit.hpp"
#include "nestopt/qc_io.hpp"
#include "nestopt/rng.hpp"

using namespace nestopt;

namespace {

// Independent oracle: run a classical reversible circuit (X/CNOT/CCNOT/MCT
// only) on a bit assignment.
std::uint64_t run_classical(const Circuit& c, std::uint64_t z) {
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::X: z ^= (std::uint64_t{1} << g.qubits[0]); break;
      case GateKind::CNOT:
        if (z >> g.qubits[0] & 1) z ^= (std::uint64_t{1} << g.qubits[1]);
        break;
      case GateKind::CCNOT:
        if ((z >> g.qubits[0] & 1) && (z >> g.qubits[1] & 1))
          z ^= (std::uint64_t{1} << g.qubits[2]);
        break;
      case GateKind::MCT: {
        bool all = true;
        for (std::size_t i = 0; i + 1 < g.qubits.size(); ++i) all = all && (z >> g.qubits[i] & 1);
        if (all) z ^= (std::uint64_t{1} << g.qubits.back());
        break;
      }
      case GateKind::SWAP: {
        std::uint64_t a = z >> g.qubits[0] & 1, b = z >> g.qubits[1] & 1;
        if (a != b) z ^= (std::uint64_t{1} << g.qubits[0]) ^ (std::uint64_t{1} << g.qubits[1]);
        break;
      }
      default:
        FAIL("non-classical gate in classical oracle");
    }
  }
  return z;
}

}  // namespace

TEST_CASE("parse_qc handles the core dialect") {
  Circuit c = parse_qc(".v a b\nBEGIN\ntof a b\nEND\n");
  CHECK(c.n_total == 2);
  CHECK(c.n_inputs == 2);
  REQUIRE(c.gates.size() == 1);
  CHECK(c.gates[0].kind == GateKind::CNOT);
  CHECK(c.gates[0].qubits == std::vector<int>{0, 1});

  Circuit t = parse_qc(".v a\nBEGIN\nT* a\nEND");
  REQUIRE(t.gates.size() == 1);
  CHECK(t.gates[0].kind == GateKind::Tdg);

  Circuit z3 = parse_qc(".v a b c\nBEGIN\nZ a b c\nEND");
  REQUIRE(z3.gates.size() == 1);
  CHECK(z3.gates[0].kind == GateKind::CCZ);

  Circuit misc = parse_qc(
      ".v q1 q2 q3 q4\n.i q1 q2\n"
      "BEGIN\n"
      "H q1  # comment\n"
      "not q2\n"
      "P* q3\n"
      "swap q1 q4\n"
      "tof q1 q2 q3 q4\n"
      "END\n");
  CHECK(misc.n_inputs == 2);
  CHECK(misc.n_total == 4);
  CHECK(misc.gates[1].kind == GateKind::X);
  CHECK(misc.gates[2].kind == GateKind::Sdg);
  CHECK(misc.gates[3].kind == GateKind::SWAP);
  CHECK(misc.gates[4].kind == GateKind::MCT);

  // unknown directives warn but do not fail
  std::vector<std::string> warnings;
  parse_qc(".v a\n.weird x\nBEGIN\nEND\n", &warnings);
  CHECK(warnings.size() == 1);
}

TEST_CASE("parse_qc reports errors with line numbers") {
  CHECK_THROWS_AS(parse_qc(".v a\nBEGIN\nfrob a\nEND"), qc_parse_error);
  CHECK_THROWS_AS(parse_qc(".v a\nBEGIN\nT b\nEND"), qc_parse_error);
  CHECK_THROWS_AS(parse_qc(".v a\nBEGIN\nT a\n"), qc_parse_error);  // missing END
  try {
    parse_qc(".v a\nBEGIN\nT a\nbogus a\nEND");
    FAIL("expected parse error");
  } catch (const qc_parse_error& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("write_qc emits the expected lines") {
  Circuit c(2);
  c.labels = {"a", "b"};
  c.push(Gate::cnot(0, 1));
  std::string text = write_qc(c);
  CHECK(text.find("tof a b") != std::string::npos);

  Circuit d(1);
  d.labels = {"a"};
  d.push(Gate::h(0));
  d.push(Gate::t(0));
  std::string td = write_qc(d);
  CHECK(td.find("H a") < td.find("T a"));

  Circuit m(1);
  m.labels = {"a"};
  m.bit_count = 1;
  m.push(Gate::meas_x(0, 0));
  CHECK_THROWS_AS(write_qc(m, false), circuit_error);
  CHECK(write_qc(m, true).find("measx a -> s0") != std::string::npos);

  Circuit cond(1);
  cond.labels = {"a"};
  cond.bit_count = 2;
  cond.push(Gate::cond(CondKind::Sdg, 0, {1, 0}));
  CHECK(write_qc(cond, true).find("cond s0^s1 S* a") != std::string::npos);
}

TEST_CASE("round-trip: parse(write(c)) == c for random serializable circuits") {
  Rng rng(2024);
  for (int round = 0; round < 40; ++round) {
    int n = 2 + static_cast<int>(rng.below(6));
    Circuit c(n);
    int len = static_cast<int>(rng.below(25));
    for (int i = 0; i < len; ++i) {
      int q = static_cast<int>(rng.below(n));
      int r = static_cast<int>(rng.below(n - 1));
      if (r >= q) ++r;
      switch (rng.below(10)) {
        case 0: c.push(Gate::x(q)); break;
        case 1: c.push(Gate::z(q)); break;
        case 2: c.push(Gate::s(q)); break;
        case 3: c.push(Gate::sdg(q)); break;
        case 4: c.push(Gate::t(q)); break;
        case 5: c.push(Gate::tdg(q)); break;
        case 6: c.push(Gate::h(q)); break;
        case 7: c.push(Gate::cnot(q, r)); break;
        case 8: c.push(Gate::cz(q, r)); break;
        default: {
          if (n >= 3) {
            int u = static_cast<int>(rng.below(n - 2));
            if (u >= std::min(q, r)) ++u;
            if (u >= std::max(q, r)) ++u;
            c.push(Gate::ccnot(q, r, u));
          }
          break;
        }
      }
    }
    Circuit back = parse_qc(write_qc(c));
    REQUIRE(back.gates.size() == c.gates.size());
    CHECK(back.n_total == c.n_total);
    CHECK(back.n_inputs == c.n_inputs);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
      CHECK(back.gates[i].kind == c.gates[i].kind);
      CHECK(back.gates[i].qubits == c.gates[i].qubits);
    }
  }
}

TEST_CASE("t_count_gates counts only explicit T gates") {
  Circuit c(3);
  c.push(Gate::t(0));
  c.push(Gate::tdg(1));
  c.push(Gate::s(0));
  CHECK(c.t_count_gates() == 2);
  CHECK(Circuit(1).t_count_gates() == 0);
  Circuit z(3);
  z.push(Gate::ccz(0, 1, 2));
  CHECK(z.t_count_gates() == 0);
}

TEST_CASE("gate arity is validated on every construction path") {
  Circuit c(3);
  Gate bad = Gate::simple(GateKind::CNOT, {0});
  CHECK_THROWS_AS(c.push(bad), circuit_error);
  Gate dup = Gate::simple(GateKind::CCZ, {0, 1, 1});
  CHECK_THROWS_AS(c.push(dup), circuit_error);
  Gate oob = Gate::simple(GateKind::X, {7});
  CHECK_THROWS_AS(c.push(oob), circuit_error);
}

TEST_CASE("decompose_mct: fixed examples") {
  // 2-control MCT is spelled CCNOT and is untouched
  Circuit plain(4);
  plain.push(Gate::ccnot(0, 1, 2));
  Circuit out = decompose_mct(plain);
  CHECK(out.gates.size() == 1);
  CHECK(out.n_total == 4);

  // 3 controls -> compute/uncompute with one fresh auxiliary
  Circuit m(4);
  m.push(Gate::simple(GateKind::MCT, {0, 1, 2, 3}));
  Circuit d = decompose_mct(m);
  REQUIRE(d.gates.size() == 3);
  CHECK(d.n_total == 5);
  CHECK(d.gates[0].qubits == std::vector<int>{0, 1, 4});
  CHECK(d.gates[1].qubits == std::vector<int>{4, 2, 3});
  CHECK(d.gates[2].qubits == std::vector<int>{0, 1, 4});

  // derived oracle: all 16 input assignments against the 3-control truth table
  for (std::uint64_t z = 0; z < 16; ++z) {
    std::uint64_t expect = z;
    if ((z & 0b0111) == 0b0111) expect ^= 0b1000;
    std::uint64_t got = run_classical(d, z);  // auxiliaries start at 0
    CHECK((got & 0b1111) == expect);
    CHECK((got >> 4) == 0);  // auxiliary returned to 0
  }
}

TEST_CASE("decompose_mct preserves the permutation for random MCT circuits") {
  Rng rng(5);
  for (int round = 0; round < 20; ++round) {
    int n = 4 + static_cast<int>(rng.below(3));  // 4..6 inputs
    Circuit c(n);
    for (int i = 0; i < 6; ++i) {
      switch (rng.below(3)) {
        case 0: c.push(Gate::x(static_cast<int>(rng.below(n)))); break;
        case 1: {
          int a = static_cast<int>(rng.below(n));
          int b = static_cast<int>(rng.below(n - 1));
          if (b >= a) ++b;
          c.push(Gate::cnot(a, b));
          break;
        }
        default: {
          std::vector<int> qs = Rng(rng.next()).subset(n, std::min(n, 4 + static_cast<int>(rng.below(2))));
          c.push(Gate::simple(GateKind::MCT, qs));
          break;
        }
      }
    }
    Circuit d = decompose_mct(c);
    for (const Gate& g : d.gates) CHECK(g.kind != GateKind::MCT);
    std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
      CHECK((run_classical(d, z) & mask) == run_classical(c, z));
      CHECK((run_classical(d, z) & ~mask) == 0);
    }
  }
}
