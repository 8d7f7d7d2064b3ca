#include "doctest.h"
#include "paper_examples.hpp"
#include "support.hpp"

using namespace ts;

TEST_SUITE_BEGIN("pg");

TEST_CASE("pattern-generality verdicts") {
  CHECK(is_pattern_general(paper::pg_fxy()));
  CHECK(!is_pattern_general(paper::pg_fx1()));   // value in the term
  CHECK(!is_pattern_general(paper::pg_fxx()));   // x repeats
  CHECK(is_pattern_general(paper::pg_nested())); // y repeats but y is not logical
}

TEST_CASE("transformation of f(x,1) and f(x,x)") {
  // PG(<{x} | f(x,1) | x >= 0>)
  PGResult r1 = pg_transform(paper::pg_fx1());
  Variable w1 = iv("w1"), w2 = iv("w2");
  ECTerm want1 =
      mk({w1, w2}, Term::app(F2(), {Term::var(w1), Term::var(w2)}),
         ec({iv("x")}, land_(land_(ge(V("x"), L(0)), eq(V("x"), V("w1"))),
                             eq(L(1), V("w2")))));
  CHECK(r1.result == want1);
  CHECK(r1.hole_positions == std::vector<Position>{pos({1}), pos({2})});
  CHECK(r1.fresh_vars == std::vector<Variable>{w1, w2});
  CHECK(*r1.back_substitution.find(w1) == V("x"));
  CHECK(*r1.back_substitution.find(w2) == L(1));

  // PG(<{x} | f(x,x) | x >= 0>)
  PGResult r2 = pg_transform(paper::pg_fxx());
  ECTerm want2 =
      mk({w1, w2}, Term::app(F2(), {Term::var(w1), Term::var(w2)}),
         ec({iv("x")}, land_(land_(ge(V("x"), L(0)), eq(V("x"), V("w1"))),
                             eq(V("x"), V("w2")))));
  CHECK(r2.result == want2);
}

TEST_CASE("no logical or value positions: the transformation is the identity") {
  ECTerm e = mk({}, Term::app(G1(), {V("y")}), B(true));
  PGResult r = pg_transform(e);
  CHECK(r.result == e);
  CHECK(r.hole_positions.empty());
  CHECK(r.fresh_vars.empty());
  CHECK(r.back_substitution.empty());
}

TEST_CASE("back substitution restores the original term part") {
  Gen g(21);
  for (int i = 0; i < 150; ++i) {
    ECTerm e = g.ecterm();
    PGResult r = pg_transform(e);
    CHECK(r.back_substitution(r.result.term()) == e.term());
  }
}

TEST_CASE("fresh names dodge collisions with a generation tag") {
  // the input already uses w1
  ECTerm e = mk({iv("w1")}, Term::app(F2(), {V("w1"), L(3)}),
                ge(V("w1"), L(0)));
  PGResult r = pg_transform(e);
  CHECK(is_pattern_general(r.result));
  for (const Variable& w : r.fresh_vars) CHECK(w != iv("w1"));
  CHECK(r.fresh_vars[0].name == "w1_1");
}

TEST_CASE("well-formedness and pattern-generality of outputs (fuzzed)") {
  Gen g(65);
  for (int i = 0; i < 150; ++i) {
    ECTerm e = g.ecterm();
    PGResult r = pg_transform(e);  // the ECTerm constructor re-validates
    CHECK(is_pattern_general(r.result));
  }
}

TEST_CASE("satisfiability is preserved in both directions (fuzzed)") {
  Gen g(66);
  GridBackend grid(GridRange(-3, 3), true);
  int sat_count = 0, unsat_count = 0;
  for (int i = 0; i < 200 && (sat_count < 25 || unsat_count < 25); ++i) {
    bool force_unsat = i % 3 == 0;
    ECTerm e = g.ecterm(2, true, force_unsat);
    if (positions_of(e.term(), e.logical_vars(), true).size() > 3) continue;
    PGResult r = pg_transform(e);
    Verdict before = is_satisfiable(e, grid);
    Verdict after = is_satisfiable(r.result, grid);
    REQUIRE(before.definite());
    REQUIRE(after.definite());
    CHECK(before.kind == after.kind);
    (before.is_holds() ? sat_count : unsat_count)++;
  }
  CHECK(sat_count >= 25);
  CHECK(unsat_count >= 25);
}

TEST_CASE("the transformation is equivalence-preserving under the oracle") {
  Gen g(67);
  OracleConfig cfg{GridRange(-3, 3), true};
  for (int i = 0; i < 60; ++i) {
    ECTerm e = g.small_ecterm(2, false);
    PGResult r = pg_transform(e);
    CHECK(oracle_equiv(e, r.result, cfg).is_holds());
  }
}

TEST_CASE("back validity holds on the worked examples") {
  GridBackend grid(GridRange(-8, 8), true);
  PGResult r1 = pg_transform(paper::pg_fx1());
  CHECK(back_validity_check(paper::pg_fx1(), r1, grid).is_holds());
  PGResult r2 = pg_transform(paper::pg_fxx());
  CHECK(back_validity_check(paper::pg_fxx(), r2, grid).is_holds());

  ECTerm fix = mk({}, Term::app(G1(), {V("y")}), B(true));
  CHECK(back_validity_check(fix, pg_transform(fix), grid).is_holds());
}

TEST_CASE("back validity holds on fuzzed satisfiable inputs") {
  Gen g(68);
  GridBackend grid(GridRange(-3, 3), true);
  for (int i = 0; i < 100; ++i) {
    ECTerm e = g.small_ecterm(2);
    CHECK(back_validity_check(e, pg_transform(e), grid).is_holds());
  }
}

TEST_CASE("equality transfer between original subterms and fresh variables") {
  // |= (E x.phi) => (s|_pi = s|_pj)  iff  |= (E y.psi) => (wi = wj),
  // and the same with a value on the right-hand side.
  Gen g(69);
  GridBackend grid(GridRange(-3, 3), true);
  for (int i = 0; i < 50; ++i) {
    ECTerm e = g.small_ecterm(2);
    PGResult r = pg_transform(e);
    size_t n = r.hole_positions.size();
    auto lhs_implies = [&](const Term& a, const Term& b) {
      ExistentialConstraint prem = e.constraint().bound_seq().empty()
                                       ? e.constraint()
                                       : freshen_bound(e.constraint(), {});
      return check_valid(
                 Query::validity(QueryFormula::implies(
                     QueryFormula::leaf(prem), QueryFormula::leaf(lc(eq(a, b))))),
                 grid)
          .is_holds();
    };
    auto rhs_implies = [&](const Term& a, const Term& b) {
      ExistentialConstraint prem =
          freshen_bound(r.result.constraint(), variables(e.term()));
      return check_valid(
                 Query::validity(QueryFormula::implies(
                     QueryFormula::leaf(prem), QueryFormula::leaf(lc(eq(a, b))))),
                 grid)
          .is_holds();
    };
    for (size_t a = 0; a < n; ++a) {
      const Term& sa = subterm_at(e.term(), r.hole_positions[a]);
      for (size_t b = a + 1; b < n; ++b) {
        const Term& sb = subterm_at(e.term(), r.hole_positions[b]);
        CHECK(lhs_implies(sa, sb) ==
              rhs_implies(Term::var(r.fresh_vars[a]),
                          Term::var(r.fresh_vars[b])));
      }
      for (long v = -1; v <= 1; ++v) {
        CHECK(lhs_implies(sa, L(v)) ==
              rhs_implies(Term::var(r.fresh_vars[a]), L(v)));
      }
    }
  }
}

TEST_CASE("pattern-general sides of equivalent pairs are most general") {
  // when e is pattern-general and d is equivalent to it, the term part of e
  // matches the term part of d
  Gen g(70);
  for (int i = 0; i < 100; ++i) {
    ECTerm d = g.ecterm();
    PGResult r = pg_transform(d);  // equivalent and pattern-general
    CHECK(match(r.result.term(), d.term()));
  }
}

TEST_SUITE_END();
