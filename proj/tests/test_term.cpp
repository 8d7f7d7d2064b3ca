#include "doctest.h"
#include "paper_examples.hpp"
#include "support.hpp"

using namespace ts;

TEST_SUITE_BEGIN("term");

TEST_CASE("positions with symbol filters") {
  // Pos_{X+Val}(h(x,x',0,y,y,y',0*10)) = {1,2,3,4,5,6,7.1,7.2}
  Term s = paper::class_term_s();
  VariableSet X{iv("x"), iv("x'"), iv("y"), iv("y'")};
  std::vector<Position> got = positions_of(s, X, true);
  std::vector<Position> want{pos({1}), pos({2}), pos({3}), pos({4}),
                             pos({5}), pos({6}), pos({7, 1}), pos({7, 2})};
  CHECK(got == want);

  CHECK(positions_of(V("x"), {iv("x")}, false) ==
        std::vector<Position>{Position::root()});

  // f(1, g(y)) has a single value position
  Term t = Term::app(F2(), {L(1), V("y")});
  CHECK(positions_of(t, {}, true) == std::vector<Position>{pos({1})});

  CHECK(positions(s).size() == 10);  // 8 leaves + the product + the root
}

TEST_CASE("subterm_at and replace_at") {
  Term s = paper::class_term_s();
  CHECK(subterm_at(s, pos({7, 2})) == L(10));
  CHECK(subterm_at(s, Position::root()) == s);

  Term u = Term::app(G1(), {V("q")});
  Term repl = Term::app(C0(), {});
  CHECK(replace_at(u, Position::root(), repl) == repl);

  Term fx1 = Term::app(F2(), {V("x"), L(1)});
  Term w2 = V("w2");
  CHECK(replace_at(fx1, pos({2}), w2) == Term::app(F2(), {V("x"), V("w2")}));

  CHECK_THROWS_AS(subterm_at(fx1, pos({3})), PositionError);
  CHECK_THROWS_AS(replace_at(fx1, pos({2}), Term::app(C0(), {})), SortError);
}

TEST_CASE("round-trip replace(subterm) over random terms") {
  Gen g(101);
  for (int i = 0; i < 200; ++i) {
    Term t = g.dterm(3);
    for (const Position& p : positions(t))
      CHECK(replace_at(t, p, subterm_at(t, p)) == t);
  }
}

TEST_CASE("substitution application") {
  // {x -> 1, y -> 6, z -> 2} on f(x+2, g(y)) touches only x and y
  const FunctionSymbol fid = sym("fd", {sort_int(), D()});
  Term t = Term::app(fid, {add(V("x"), L(2)), Term::app(G1(), {V("y")})});
  Substitution s{{iv("x"), L(1)}, {iv("y"), L(6)}, {iv("z"), L(2)}};
  CHECK(s(t) == Term::app(fid, {add(L(1), L(2)), Term::app(G1(), {L(6)})}));

  CHECK(Substitution{}(t) == t);

  Substitution swap{{iv("x"), V("y")}, {iv("y"), V("x")}};
  CHECK(swap(Term::app(F2(), {V("x"), V("y")})) ==
        Term::app(F2(), {V("y"), V("x")}));
}

TEST_CASE("substitution domain drops identities and checks sorts") {
  Substitution s;
  s.set(iv("x"), V("x"));
  CHECK(s.empty());
  CHECK_THROWS_AS(s.set(iv("x"), Term::app(C0(), {})), SortError);
  s.set(iv("x"), L(3));
  CHECK(s.domain() == VariableSet{iv("x")});
}

TEST_CASE("composition law on random terms") {
  Gen g(707);
  for (int i = 0; i < 100; ++i) {
    Term t = g.dterm(2);
    Substitution s1{{iv("x"), g.int_term(1)}, {iv("y"), g.int_term(1)}};
    Substitution s2{{iv("y"), g.int_term(1)}, {iv("z"), g.int_term(1)}};
    CHECK(s2(s1(t)) == Substitution::compose(s2, s1)(t));
  }
}

TEST_CASE("renaming closure and invertibility") {
  Renaming delta{{iv("x"), iv("y")}, {iv("y"), iv("x")}};
  Term t = Term::app(F2(), {V("x"), V("y")});
  CHECK(delta(t) == Term::app(F2(), {V("y"), V("x")}));
  CHECK(delta.inverse()(delta(t)) == t);

  // a -> b closes into a swap so that inversion stays total
  Renaming r{{iv("a"), iv("b")}};
  CHECK(r(iv("b")) == iv("a"));
  Gen g(11);
  for (int i = 0; i < 100; ++i) {
    Term u = g.dterm(3);
    CHECK(r.inverse()(r(u)) == u);
    CHECK(delta.inverse()(delta(u)) == u);
  }

  CHECK_THROWS_AS((Renaming{{iv("a"), iv("c")}, {iv("b"), iv("c")}}), Error);
  CHECK_THROWS_AS((Renaming{{iv("a"), bvar("t")}}), SortError);
}

TEST_CASE("matching") {
  Term pat = Term::app(F2(), {V("x"), V("y")});
  Term target = Term::app(F2(), {L(1), add(V("z"), V("z"))});
  auto m = match(pat, target);
  REQUIRE(m);
  CHECK((*m)(pat) == target);
  CHECK(*m->find(iv("x")) == L(1));

  CHECK(!match(Term::app(F2(), {V("x"), V("x")}),
               Term::app(F2(), {L(1), L(2)})));

  auto id = match(pat, pat);
  REQUIRE(id);
  CHECK(id->empty());

  // frozen variables match only themselves
  CHECK(!match(pat, Term::app(F2(), {L(1), L(2)}), {iv("x")}));
  CHECK(match(pat, Term::app(F2(), {V("x"), L(2)}), {iv("x")}));
}

TEST_CASE("matching soundness on random instances") {
  Gen g(5150);
  for (int i = 0; i < 150; ++i) {
    Term pat = g.dterm(2);
    Substitution inst{{iv("x"), g.int_term(1)},
                      {iv("y"), g.int_term(1)},
                      {iv("z"), g.int_term(1)}};
    Term target = inst(pat);
    auto m = match(pat, target);
    REQUIRE(m);
    CHECK((*m)(pat) == target);
  }
}

TEST_CASE("multihole contexts") {
  Term fx1 = Term::app(F2(), {V("x"), L(1)});
  Context c = multihole_context(fx1, {pos({1}), pos({2})});
  CHECK(c.hole_count() == 2);
  CHECK(c.refill(std::vector<Term>{V("x"), L(1)}) == fx1);
  CHECK(c.refill(std::vector<Term>{L(7), L(9)}) ==
        Term::app(F2(), {L(7), L(9)}));

  Context whole = multihole_context(fx1, {});
  CHECK(whole.skeleton() == fx1);

  Term s = paper::class_term_s();
  std::vector<Position> ps =
      positions_of(s, {iv("x"), iv("x'"), iv("y"), iv("y'")}, true);
  Context cs = multihole_context(s, ps);
  std::vector<Term> subs;
  for (const Position& p : ps) subs.push_back(subterm_at(s, p));
  CHECK(cs.refill(subs) == s);

  CHECK_THROWS_AS(multihole_context(s, {pos({7}), pos({7, 1})}),
                  PositionError);
  CHECK_THROWS_AS(cs.refill(std::vector<Term>{V("x")}), PositionError);
}

TEST_CASE("positions are stable under variable-to-value substitution") {
  Gen g(99);
  for (int i = 0; i < 100; ++i) {
    Term t = g.dterm(3);
    Substitution gamma;
    for (const Variable& v : variables(t))
      if (v.sort == sort_int())
        gamma.set(v, g.coin() ? L(g.irange(-3, 3)) : Term::var(iv("q")));
    CHECK(positions(t) == positions(gamma(t)));
  }
}

TEST_CASE("application construction is sort-checked") {
  CHECK_THROWS_AS(Term::app(F2(), {V("x")}), SortError);
  CHECK_THROWS_AS(Term::app(F2(), {V("x"), Term::app(C0(), {})}), SortError);
  CHECK_THROWS_AS(Term::app(G1(), {B(true)}), SortError);
}

TEST_SUITE_END();
