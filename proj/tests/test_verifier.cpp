/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#include <catch2/catch_amalgamated.hpp>

#include "nestopt/gadgetizer.hpp"
#include "nestopt/rng.hpp"
#include "nestopt/spider_nest.hpp"
#include "nestopt/verifier.hpp"

using namespace nestopt;

namespace {

HomogeneousCircuit random_diag(Rng& rng, int n, int gadgets) {
  HomogeneousCircuit h(n);
  for (int i = 0; i < gadgets; ++i) {
    SupportSet s;
    while (s.empty())
      for (int q = 0; q < n; ++q)
        if (rng.below(2)) s.set(q);
    h.add_gadget(s, static_cast<int>(rng.below(8)));
  }
  return h;
}

}  // namespace

TEST_CASE("diag_equiv compares phase functions exhaustively") {
  Rng rng(31);
  HomogeneousCircuit h = random_diag(rng, 5, 9);
  CHECK(diag_equiv(h, h).equivalent);

  // composing any spider-nest identity changes nothing
  CHECK(diag_equiv(h, h.compose(nest(SupportSet{0, 2, 3, 4}, 5))).equivalent);

  HomogeneousCircuit a(1), b(1);
  a.add_gadget(SupportSet{0}, 1);
  b.add_gadget(SupportSet{0}, 2);
  EquivalenceReport rep = diag_equiv(a, b);
  CHECK_FALSE(rep.equivalent);
  CHECK(rep.basis_witness.value() == 1);

  CHECK_THROWS_AS(diag_equiv(HomogeneousCircuit(21), HomogeneousCircuit(21)), verifier_error);
}

TEST_CASE("plain H is equivalent to its measurement gadget") {
  Circuit h1(1);
  h1.push(Gate::h(0));

  Circuit gadget = hadamard_gadgetize(h1);
  CHECK(gadget.n_total == 2);
  EquivalenceReport rep = circuit_equiv_postselected(h1, gadget, 1e-9);
  CHECK(rep.equivalent);

  // two gadgets compose to the identity (up to post-selection)
  Circuit h2(1);
  h2.push(Gate::h(0));
  h2.push(Gate::h(0));
  Circuit id(1);
  CHECK(circuit_equiv_postselected(id, hadamard_gadgetize(h2), 1e-9).equivalent);
}

TEST_CASE("CCNOT equals its H-CCZ-H form") {
  Circuit a(3);
  a.push(Gate::ccnot(0, 1, 2));
  Circuit b(3);
  b.push(Gate::h(2));
  b.push(Gate::ccz(0, 1, 2));
  b.push(Gate::h(2));
  CHECK(circuit_equiv_postselected(a, b, 1e-9).equivalent);
}

TEST_CASE("T differs from S with a witness") {
  Circuit t(1), s(1);
  t.push(Gate::t(0));
  s.push(Gate::s(0));
  EquivalenceReport rep = circuit_equiv_postselected(t, s, 1e-9);
  CHECK_FALSE(rep.equivalent);
  CHECK(rep.basis_witness.has_value());
}

TEST_CASE("circuit_equiv is reflexive and symmetric on random circuits") {
  Rng rng(71);
  for (int round = 0; round < 10; ++round) {
    int n = 2 + static_cast<int>(rng.below(3));
    Circuit c(n);
    for (int i = 0; i < 10; ++i) {
      int q = static_cast<int>(rng.below(n));
      int r = static_cast<int>(rng.below(n - 1));
      if (r >= q) ++r;
      switch (rng.below(6)) {
        case 0: c.push(Gate::h(q)); break;
        case 1: c.push(Gate::t(q)); break;
        case 2: c.push(Gate::cnot(q, r)); break;
        case 3: c.push(Gate::s(q)); break;
        case 4: c.push(Gate::cz(q, r)); break;
        default: c.push(Gate::x(q)); break;
      }
    }
    CHECK(circuit_equiv_postselected(c, c, 1e-9).equivalent);

    Circuit d = c;
    d.push(Gate::t(0));  // perturb
    EquivalenceReport ab = circuit_equiv_postselected(c, d, 1e-9);
    EquivalenceReport ba = circuit_equiv_postselected(d, c, 1e-9);
    CHECK(ab.equivalent == ba.equivalent);
  }
}

TEST_CASE("synthesized diagonal stages agree with diag_equiv") {
  Rng rng(11);
  for (int round = 0; round < 8; ++round) {
    int n = 2 + static_cast<int>(rng.below(4));
    HomogeneousCircuit h1 = random_diag(rng, n, 6);
    HomogeneousCircuit h2 = rng.below(2) ? h1 : random_diag(rng, n, 6);
    bool diag_same = diag_equiv(h1, h2).equivalent;
    bool circ_same = circuit_equiv_postselected(h1.synthesize(), h2.synthesize(), 1e-9).equivalent;
    CHECK(diag_same == circ_same);
  }
}

TEST_CASE("size limits raise verifier errors") {
  Circuit big(13);
  CHECK_THROWS_AS(circuit_equiv_postselected(big, big, 1e-9), verifier_error);
}
