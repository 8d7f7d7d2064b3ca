#pragma once

#include "support.hpp"

// Shared fixtures for the worked examples exercised across the unit and
// acceptance suites.
namespace ts::paper {

// E x. (x >= 3) /\ (y = x * z)
inline ExistentialConstraint sat_not_valid() {
  return ec({iv("x")},
            land_(ge(V("x"), L(3)), eq(V("y"), mul(V("x"), V("z")))));
}

// E x. (x >= 3) /\ (y <= 3) /\ (x < y)    -- unsatisfiable
inline ExistentialConstraint unsat() {
  return ec({iv("x")}, land_(land_(ge(V("x"), L(3)), le(V("y"), L(3))),
                             lt(V("x"), V("y"))));
}

// E x. (x >= 3) /\ (y <= x)               -- valid
inline ExistentialConstraint valid() {
  return ec({iv("x")}, land_(ge(V("x"), L(3)), le(V("y"), V("x"))));
}

// <{x} | g(x) | E y. x = 3 * y>
inline ECTerm gx_multiple_of_3() {
  return mk({iv("x")}, Term::app(G1(), {V("x")}),
            ec({iv("y")}, eq(V("x"), mul(L(3), V("y")))));
}

// The four equivalent terms of the subsumption/equivalence example.
inline ECTerm chain_f11() {
  return mk({}, Term::app(F2(), {L(1), L(1)}), B(true));
}
inline ECTerm chain_fxy() {
  return mk({iv("x"), iv("y")}, Term::app(F2(), {V("x"), V("y")}),
            land_(eq(V("x"), V("y")), eq(V("x"), L(1))));
}
inline ECTerm chain_f1y() {
  return mk({iv("y")}, Term::app(F2(), {L(1), V("y")}), eq(V("y"), L(1)));
}
inline ECTerm chain_fxx() {
  return mk({iv("x")}, Term::app(F2(), {V("x"), V("x")}), eq(V("x"), L(1)));
}

// Subsumption-without-equivalence triples (left, right).
inline ECTerm sub_fxy_xeq1() {
  return mk({iv("x")}, Term::app(F2(), {V("x"), V("y")}), eq(V("x"), L(1)));
}
inline ECTerm sub_fxy_xge1() {
  return mk({iv("x")}, Term::app(F2(), {V("x"), V("y")}), ge(V("x"), L(1)));
}
inline ECTerm sub_fxx_plain() {
  return mk({iv("x")}, Term::app(F2(), {V("x"), V("x")}), B(true));
}
inline ECTerm sub_fxy_xy() {
  return mk({iv("x"), iv("y")}, Term::app(F2(), {V("x"), V("y")}), B(true));
}
inline ECTerm sub_fxy_x() {
  return mk({iv("x")}, Term::app(F2(), {V("x"), V("y")}), B(true));
}

// The renaming-equivalence pairs.
inline ECTerm ren_fxy_xge0() {
  return mk({iv("x")}, Term::app(F2(), {V("x"), V("y")}), ge(V("x"), L(0)));
}
inline ECTerm ren_fyx_yge0() {
  return mk({iv("y")}, Term::app(F2(), {V("y"), V("x")}), ge(V("y"), L(0)));
}
inline ECTerm ren_even_sum() {
  return mk({iv("x")}, Term::app(F2(), {V("x"), V("y")}),
            ec({iv("z")}, eq(V("x"), add(V("z"), V("z")))));
}
inline ECTerm ren_even_mod() {
  return mk({iv("x")}, Term::app(F2(), {V("x"), V("y")}),
            eq(tmod(V("x"), L(2)), L(0)));
}

// The classical counterexample pair f(x) [x = x] vs f(x) [true].
inline ECTerm cex_fx_xeqx() {
  return embed(Term::app(F1(), {V("x")}), lc(eq(V("x"), V("x"))));
}
inline ECTerm cex_fx_true() {
  return embed(Term::app(F1(), {V("x")}), lc(B(true)));
}

// Pattern-generality verdict quartet.
inline ECTerm pg_fxy() { return ren_fxy_xge0(); }               // true
inline ECTerm pg_fx1() {
  return mk({iv("x")}, Term::app(F2(), {V("x"), L(1)}), ge(V("x"), L(0)));
}
inline ECTerm pg_fxx() {
  return mk({iv("x")}, Term::app(F2(), {V("x"), V("x")}), ge(V("x"), L(0)));
}
inline ECTerm pg_nested() {
  // <{x} | f(y, f(y, x)) | x >= 0> with f : Int, Int -> Int nesting
  static const FunctionSymbol fi =
      sym("fi", {sort_int(), sort_int()}, sort_int());
  return mk({iv("x")},
            Term::app(fi, {V("y"), Term::app(fi, {V("y"), V("x")})}),
            ge(V("x"), L(0)));
}

// The position-class example: s = h(x,x',0,y,y,y',0*10) with
// phi = (x = x') /\ (x' = 0) /\ (y = y').
inline Term class_term_s() {
  return Term::app(H7(), {V("x"), V("x'"), L(0), V("y"), V("y"), V("y'"),
                          mul(L(0), L(10))});
}
inline ECTerm class_s() {
  return mk({iv("x"), iv("x'"), iv("y"), iv("y'")}, class_term_s(),
            land_(land_(eq(V("x"), V("x'")), eq(V("x'"), L(0))),
                  eq(V("y"), V("y'"))));
}

// Its equivalent partner: t = h(z,z,z,x,x',x,z*y) with
// psi = (x <= x') /\ (x' <= x) /\ (z = 0) /\ (y = (z + 2) * 5).
inline Term class_term_t() {
  return Term::app(H7(), {V("z"), V("z"), V("z"), V("x"), V("x'"), V("x"),
                          mul(V("z"), V("y"))});
}
inline ECTerm class_t() {
  return mk({iv("x"), iv("x'"), iv("y"), iv("z")}, class_term_t(),
            land_(land_(land_(le(V("x"), V("x'")), le(V("x'"), V("x"))),
                        eq(V("z"), L(0))),
                  eq(V("y"), mul(add(V("z"), L(2)), L(5)))));
}

// Unsatisfiable pair from the pattern-general discussion.
inline ECTerm unsat_gx() {
  return mk({iv("x")}, Term::app(G1(), {V("x")}), B(false));
}
inline ECTerm unsat_x() {
  return mk({iv("x")}, V("x"), B(false));
}

}  // namespace ts::paper
