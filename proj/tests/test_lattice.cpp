#include <catch2/catch_amalgamated.hpp>

#include "omlkit/lattice.hpp"

using namespace omlkit;

namespace {

// Independent glb/lub oracle: checks the table entry against the defining
// property rather than re-running the construction search.
void check_tables_against_order(const FiniteOML& l) {
  const int n = static_cast<int>(l.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int m = l.meet(a, b);
      REQUIRE(l.leq(m, a));
      REQUIRE(l.leq(m, b));
      int j = l.join(a, b);
      REQUIRE(l.leq(a, j));
      REQUIRE(l.leq(b, j));
      for (int c = 0; c < n; ++c) {
        if (l.leq(c, a) && l.leq(c, b)) REQUIRE(l.leq(c, m));
        if (l.leq(a, c) && l.leq(b, c)) REQUIRE(l.leq(j, c));
      }
    }
  }
}

void check_ortholattice_laws(const FiniteOML& l) {
  const int n = static_cast<int>(l.size());
  for (int a = 0; a < n; ++a) {
    int oa = l.ortho_of(a);
    REQUIRE(l.ortho_of(oa) == a);
    REQUIRE(l.meet(a, oa) == l.zero());
    REQUIRE(l.join(a, oa) == l.one());
    REQUIRE(l.leq(l.zero(), a));
    REQUIRE(l.leq(a, l.one()));
    for (int b = 0; b < n; ++b) {
      if (l.leq(a, b)) REQUIRE(l.leq(l.ortho_of(b), oa));
      // De Morgan
      REQUIRE(l.ortho_of(l.meet(a, b)) == l.join(oa, l.ortho_of(b)));
    }
  }
}

}  // namespace

TEST_CASE("boolean(1) is the two-element chain") {
  auto l = FiniteOML::boolean(1);
  REQUIRE(l.size() == 2);
  CHECK(l.ortho_of(l.zero()) == l.one());
  CHECK(l.ortho_of(l.one()) == l.zero());
  check_tables_against_order(l);
  check_ortholattice_laws(l);
}

TEST_CASE("boolean(2) meets and complements") {
  auto l = FiniteOML::boolean(2);
  int a = l.index("a1");
  CHECK(l.meet(a, l.ortho_of(a)) == l.zero());
  CHECK(l.name(l.ortho_of(a)) == "a2");
  check_tables_against_order(l);
  check_ortholattice_laws(l);
}

TEST_CASE("mo(2) structure") {
  auto l = FiniteOML::mo(2);
  REQUIRE(l.size() == 6);
  REQUIRE(l.atoms().size() == 4);
  int a = l.index("a1"), b = l.index("a2");
  CHECK(l.join(a, b) == l.one());
  CHECK(l.meet(a, b) == l.zero());
  // atoms from distinct pairs are incomparable
  for (int p : l.atoms()) {
    for (int q : l.atoms()) {
      if (p != q) CHECK_FALSE(l.leq(p, q));
    }
  }
  check_tables_against_order(l);
  check_ortholattice_laws(l);
}

TEST_CASE("o6 hexagon") {
  auto l = FiniteOML::o6();
  REQUIRE(l.size() == 6);
  int a = l.index("a"), b = l.index("b");
  CHECK(l.lt(a, b));
  CHECK(l.ortho_of(b) == l.index("b'"));
  CHECK(l.lt(l.index("b'"), l.index("a'")));
  check_tables_against_order(l);
  check_ortholattice_laws(l);
}

TEST_CASE("horizontal sum pastes at the bounds only") {
  auto l = FiniteOML::horizontal_sum({FiniteOML::boolean(2), FiniteOML::boolean(2)});
  REQUIRE(l.size() == 6);  // isomorphic to mo(2)
  int x = l.index("s1.a1"), y = l.index("s2.a1");
  CHECK(l.meet(x, y) == l.zero());
  CHECK(l.join(x, y) == l.one());
  check_tables_against_order(l);
  check_ortholattice_laws(l);
}

TEST_CASE("from_order rejects broken inputs") {
  using Pairs = std::vector<std::pair<std::string, std::string>>;
  // cyclic order
  CHECK_THROWS_AS(FiniteOML::from_order({"0", "x", "y", "1"},
                                        Pairs{{"0", "x"}, {"x", "y"}, {"y", "x"}, {"y", "1"}},
                                        {{"0", "1"}, {"1", "0"}, {"x", "y"}, {"y", "x"}}),
                  InconsistentOrder);
  // no unique meet: two maximal common lower bounds
  CHECK_THROWS_AS(
      FiniteOML::from_order(
          {"0", "x", "y", "p", "q", "1"},
          Pairs{{"0", "x"}, {"0", "y"}, {"x", "p"}, {"x", "q"}, {"y", "p"}, {"y", "q"},
                {"p", "1"}, {"q", "1"}},
          {{"0", "1"}, {"1", "0"}, {"x", "p"}, {"p", "x"}, {"y", "q"}, {"q", "y"}}),
      NotALattice);
  // ortho not an involution
  CHECK_THROWS_AS(FiniteOML::from_order({"0", "x", "x'", "1"},
                                        Pairs{{"0", "x"}, {"0", "x'"}, {"x", "1"}, {"x'", "1"}},
                                        {{"0", "1"}, {"1", "0"}, {"x", "x'"}, {"x'", "1"}}),
                  BadOrtho);
  // the one-element lattice is rejected
  CHECK_THROWS_AS(FiniteOML::from_order({"0"}, Pairs{}, {{"0", "0"}}), NotALattice);
  // ortho map must swap complements
  CHECK_THROWS_AS(FiniteOML::from_order({"0", "x", "x'", "1"},
                                        Pairs{{"0", "x"}, {"0", "x'"}, {"x", "1"}, {"x'", "1"}},
                                        {{"0", "1"}, {"1", "0"}, {"x", "x"}, {"x'", "x'"}}),
                  BadOrtho);
}

TEST_CASE("unknown element lookups throw") {
  auto l = FiniteOML::mo(2);
  CHECK_THROWS_AS(l.index("zz"), UnknownElement);
}
