#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ect/ecterm.hpp"
#include "ect/equiv.hpp"
#include "ect/model.hpp"
#include "ect/oracle.hpp"
#include "ect/parse.hpp"
#include "ect/pg.hpp"
#include "ect/printer.hpp"
#include "ect/solver.hpp"

namespace ts {

using namespace ect;

// --- sorts and variables -----------------------------------------------

inline Sort D() { return Sort{"D", SortKind::Term}; }
inline Variable iv(const std::string& n) { return Variable{n, sort_int()}; }
inline Variable bvar(const std::string& n) { return Variable{n, sort_bool()}; }
inline Variable dv(const std::string& n) { return Variable{n, D()}; }

inline Term V(const std::string& n) { return Term::var(iv(n)); }
inline Term L(long v) { return Term::val(Value(Int(v))); }
inline Term B(bool b) { return Term::val(Value(b)); }

// --- term symbols --------------------------------------------------------

inline FunctionSymbol sym(const std::string& name, std::vector<Sort> args,
                          Sort res = D()) {
  return FunctionSymbol{name, std::move(args), std::move(res),
                        SymbolKind::Term};
}

inline const FunctionSymbol& F2() {
  static const FunctionSymbol f = sym("f", {sort_int(), sort_int()});
  return f;
}
inline const FunctionSymbol& F1() {
  static const FunctionSymbol f = sym("f", {sort_int()});
  return f;
}
inline const FunctionSymbol& G1() {
  static const FunctionSymbol g = sym("g", {sort_int()});
  return g;
}
inline const FunctionSymbol& H7() {
  static const FunctionSymbol h =
      sym("h", std::vector<Sort>(7, sort_int()));
  return h;
}
inline const FunctionSymbol& P2() {
  static const FunctionSymbol p = sym("p", {D(), D()});
  return p;
}
inline const FunctionSymbol& C0() {
  static const FunctionSymbol c = sym("c0", {});
  return c;
}

// --- theory operations ---------------------------------------------------

inline Term theory2(const char* op, Term a, Term b) {
  std::vector<Sort> s{a.sort(), b.sort()};
  return Term::app(*Signature::theory_symbol(op, s), {std::move(a), std::move(b)});
}
inline Term add(Term a, Term b) { return theory2("+", std::move(a), std::move(b)); }
inline Term sub(Term a, Term b) { return theory2("-", std::move(a), std::move(b)); }
inline Term mul(Term a, Term b) { return theory2("*", std::move(a), std::move(b)); }
inline Term tmod(Term a, Term b) { return theory2("mod", std::move(a), std::move(b)); }
inline Term eq(Term a, Term b) { return theory2("=", std::move(a), std::move(b)); }
inline Term neq(Term a, Term b) { return theory2("!=", std::move(a), std::move(b)); }
inline Term le(Term a, Term b) { return theory2("<=", std::move(a), std::move(b)); }
inline Term lt(Term a, Term b) { return theory2("<", std::move(a), std::move(b)); }
inline Term ge(Term a, Term b) { return theory2(">=", std::move(a), std::move(b)); }
inline Term gt(Term a, Term b) { return theory2(">", std::move(a), std::move(b)); }
inline Term land_(Term a, Term b) { return theory2("/\\", std::move(a), std::move(b)); }
inline Term lor_(Term a, Term b) { return theory2("\\/", std::move(a), std::move(b)); }
inline Term lnot(Term a) {
  return Term::app(*Signature::theory_symbol("not", std::vector<Sort>{sort_bool()}),
                   {std::move(a)});
}

inline LogicalConstraint lc(Term t) { return LogicalConstraint(std::move(t)); }
inline ExistentialConstraint ec(std::vector<Variable> bound, Term body) {
  return ExistentialConstraint(std::move(bound), lc(std::move(body)));
}
inline ExistentialConstraint ec(Term body) { return ec({}, std::move(body)); }

inline ECTerm mk(VariableSet X, Term s, ExistentialConstraint c) {
  return ECTerm(std::move(X), std::move(s), std::move(c));
}
inline ECTerm mk(VariableSet X, Term s, Term body) {
  return mk(std::move(X), std::move(s), ec(std::move(body)));
}

inline Position pos(std::initializer_list<int> path) {
  Position p;
  p.path = path;
  return p;
}

// --- randomized generation ----------------------------------------------

struct Gen {
  std::mt19937_64 rng;

  explicit Gen(uint64_t seed) : rng(seed) {}

  int irange(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  }
  bool coin(double p = 0.5) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < p;
  }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<size_t>(irange(0, static_cast<int>(v.size()) - 1))];
  }

  std::vector<Variable> int_pool{iv("x"), iv("y"), iv("z")};

  Term int_term(int depth) {
    int c = irange(0, depth > 0 ? 3 : 1);
    switch (c) {
      case 0:
        return Term::var(pick(int_pool));
      case 1:
        return L(irange(-2, 2));
      case 2:
        return add(int_term(depth - 1), int_term(depth - 1));
      default:
        return mul(int_term(depth - 1), L(irange(1, 2)));
    }
  }

  Term dterm(int depth) {
    int c = irange(0, depth > 0 ? 3 : 2);
    switch (c) {
      case 0:
        return Term::app(G1(), {int_term(irange(0, 1))});
      case 1:
        return Term::app(F2(), {int_term(irange(0, 1)), int_term(irange(0, 1))});
      case 2:
        return Term::app(C0(), {});
      default:
        return Term::app(P2(), {dterm(depth - 1), dterm(depth - 1)});
    }
  }

  /// A satisfiable ECTerm whose constraint confines every logical and bound
  /// variable to [-3, 3]. Retries until the grid reports satisfiable.
  ECTerm ecterm(int max_logical = 3, bool allow_bound = true,
                bool force_unsat = false) {
    GridBackend sat_check(GridRange(-3, 3), true);
    for (int attempt = 0;; ++attempt) {
      Term s = dterm(irange(1, 3));
      std::vector<Variable> theory_vars;
      for (const Variable& v : variables(s))
        if (v.sort == sort_int()) theory_vars.push_back(v);
      std::shuffle(theory_vars.begin(), theory_vars.end(), rng);
      int nx = std::min<int>(static_cast<int>(theory_vars.size()),
                             irange(0, max_logical));
      VariableSet X(theory_vars.begin(), theory_vars.begin() + nx);

      std::optional<Term> body;
      auto conj = [&](Term t) { body = body ? land_(*body, t) : t; };
      std::vector<Variable> bound;
      for (const Variable& x : X) {
        if (coin(0.3)) {
          conj(eq(Term::var(x), L(irange(-3, 3))));
        } else {
          int lo = irange(-3, 2);
          conj(land_(ge(Term::var(x), L(lo)),
                     le(Term::var(x), L(irange(lo, 3)))));
        }
      }
      if (X.size() >= 2 && coin(0.4)) {
        const Variable& a = *X.begin();
        const Variable& b = *std::next(X.begin());
        conj(coin() ? eq(Term::var(a), Term::var(b))
                    : le(Term::var(a), Term::var(b)));
      }
      if (allow_bound && !X.empty() && coin(0.4)) {
        Variable u = iv("u" + std::to_string(irange(1, 2)));
        if (!variables(s).count(u)) {
          const Variable& x = *X.begin();
          conj(land_(land_(ge(Term::var(u), L(-3)), le(Term::var(u), L(3))),
                     eq(Term::var(x), add(Term::var(u), L(irange(-1, 1))))));
          bound.push_back(u);
        }
      }
      if (force_unsat) {
        if (!X.empty()) {
          const Variable& x = *X.begin();
          conj(land_(eq(Term::var(x), L(0)), eq(Term::var(x), L(1))));
        } else {
          conj(B(false));
        }
      }
      if (!body) body = B(true);

      try {
        ECTerm e = mk(X, s, ec(std::move(bound), *body));
        Verdict sat = is_satisfiable(e, sat_check);
        if (force_unsat ? sat.is_fails() : sat.is_holds()) return e;
      } catch (const Error&) {
        // malformed draw; retry
      }
      if (attempt > 200) throw Error("generator failed to produce a term");
    }
  }

  /// A confined ECTerm with few X+Val positions, keeping the grid routes
  /// and the oracle fast.
  ECTerm small_ecterm(int max_logical = 3, bool allow_bound = true,
                      size_t max_positions = 3) {
    for (int attempt = 0; attempt < 300; ++attempt) {
      ECTerm e = ecterm(max_logical, allow_bound);
      if (positions_of(e.term(), e.logical_vars(), true).size() <=
          max_positions)
        return e;
    }
    throw Error("generator failed to produce a small term");
  }

  /// Renamed variant: fresh names for all variables (paper-equivalence).
  ECTerm renamed_variant(const ECTerm& e, Renaming* out = nullptr) {
    VariableSet all = variables(e.term());
    VariableSet cv = e.constraint().body().variables();
    all.insert(cv.begin(), cv.end());
    std::vector<std::pair<Variable, Variable>> pairs;
    int i = 1;
    for (const Variable& v : all) {
      if (std::find_if(e.constraint().bound_seq().begin(),
                       e.constraint().bound_seq().end(),
                       [&](const Variable& b) { return b == v; }) !=
          e.constraint().bound_seq().end())
        continue;  // bound variables stay put
      pairs.emplace_back(v, Variable{"r" + std::to_string(i++), v.sort});
    }
    Renaming delta = Renaming::from_pairs(pairs);
    if (out) *out = delta;
    ExistentialConstraint c =
        apply_subst_ec(e.constraint(), delta.as_substitution());
    return ECTerm(delta.image(e.logical_vars()), delta(e.term()), c);
  }

  /// Replaces one value occurrence v at position p by a fresh logical
  /// variable constrained to equal v (paper-equivalence).
  std::optional<ECTerm> outlined_value(const ECTerm& e) {
    std::vector<Position> vals = positions_of(e.term(), {}, true);
    if (vals.empty()) return std::nullopt;
    Position p = pick(vals);
    const Term& sub = subterm_at(e.term(), p);
    Variable fresh{"ov", sub.sort()};
    if (variables(e.term()).count(fresh) ||
        e.constraint().body().variables().count(fresh))
      return std::nullopt;
    Term s2 = replace_at(e.term(), p, Term::var(fresh));
    Term body2 = e.constraint().body().is_top()
                     ? eq(Term::var(fresh), sub)
                     : land_(e.constraint().body().term(),
                             eq(Term::var(fresh), sub));
    VariableSet X2 = e.logical_vars();
    X2.insert(fresh);
    return ECTerm(X2, s2, ec(e.constraint().bound_seq(), body2));
  }

  /// Splits a repeated logical variable into a fresh one equated to it
  /// (paper-equivalence).
  std::optional<ECTerm> linearized(const ECTerm& e) {
    for (const Variable& x : e.logical_vars()) {
      std::vector<Position> ps = positions_of(e.term(), {x}, false);
      if (ps.size() < 2) continue;
      Variable fresh{"lv", x.sort};
      if (variables(e.term()).count(fresh) ||
          e.constraint().body().variables().count(fresh))
        return std::nullopt;
      Term s2 = replace_at(e.term(), ps.back(), Term::var(fresh));
      Term body2 = e.constraint().body().is_top()
                       ? eq(Term::var(fresh), Term::var(x))
                       : land_(e.constraint().body().term(),
                               eq(Term::var(fresh), Term::var(x)));
      VariableSet X2 = e.logical_vars();
      X2.insert(fresh);
      return ECTerm(X2, s2, ec(e.constraint().bound_seq(), body2));
    }
    return std::nullopt;
  }

  /// A pair for differential testing: sometimes equivalent by one of the
  /// meaning-preserving constructions, sometimes perturbed or independent.
  std::pair<ECTerm, ECTerm> related_pair() {
    ECTerm e = small_ecterm(2);
    switch (irange(0, 5)) {
      case 0:
        return {e, renamed_variant(e)};
      case 1:
        return {e, pg_transform(e).result};
      case 2:
        if (auto o = outlined_value(e)) return {e, *o};
        return {e, renamed_variant(e)};
      case 3:
        if (auto l = linearized(e)) return {e, *l};
        return {e, renamed_variant(e)};
      case 4:
        return {e, perturbed(e)};
      default:
        return {e, small_ecterm(2)};
    }
  }

  /// A small change that usually breaks equivalence.
  ECTerm perturbed(const ECTerm& e) {
    GridBackend sat_check(GridRange(-3, 3), true);
    for (int attempt = 0; attempt < 50; ++attempt) {
      try {
        if (!e.logical_vars().empty()) {
          const Variable& x = *e.logical_vars().begin();
          Term body2 = coin() ? land_(e.constraint().body().term(),
                                      neq(Term::var(x), L(irange(-1, 1))))
                              : land_(e.constraint().body().term(),
                                      ge(Term::var(x), L(irange(-1, 2))));
          ECTerm cand(e.logical_vars(), e.term(),
                      ec(e.constraint().bound_seq(), body2));
          if (is_satisfiable(cand, sat_check).is_holds()) return cand;
        } else {
          break;
        }
      } catch (const Error&) {
      }
    }
    return e;
  }
};

}  // namespace ts
