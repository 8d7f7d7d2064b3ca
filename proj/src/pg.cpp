#include "ect/pg.hpp"

#include <algorithm>

namespace ect {

bool is_pattern_general(const ECTerm& e) {
  if (contains_value(e.term())) return false;
  for (const Variable& x : e.logical_vars()) {
    if (positions_of(e.term(), {x}, false).size() > 1) return false;
  }
  return true;
}

namespace {

/// w1, w2, ...; a numeric generation tag is appended on collision with
/// names already in use.
std::vector<Variable> fresh_w_vars(const std::vector<Sort>& sorts,
                                   VariableSet taken) {
  std::vector<Variable> out;
  for (size_t i = 0; i < sorts.size(); ++i) {
    std::string base = "w" + std::to_string(i + 1);
    std::string name = base;
    for (int gen = 1;; ++gen) {
      bool clash = false;
      for (const Variable& t : taken)
        if (t.name == name) clash = true;
      if (!clash) break;
      name = base + "_" + std::to_string(gen);
    }
    Variable w{name, sorts[i]};
    taken.insert(w);
    out.push_back(w);
  }
  return out;
}

}  // namespace

PGResult pg_transform(const ECTerm& e) {
  const Term& s = e.term();
  std::vector<Position> ps = positions_of(s, e.logical_vars(), true);

  VariableSet taken = variables(s);
  VariableSet cv = e.constraint().body().variables();
  taken.insert(cv.begin(), cv.end());
  std::vector<Sort> hole_sorts;
  for (const Position& p : ps) hole_sorts.push_back(subterm_at(s, p).sort());
  std::vector<Variable> ws = fresh_w_vars(hole_sorts, taken);

  Term t = s;
  for (size_t i = 0; i < ps.size(); ++i)
    t = replace_at(t, ps[i], Term::var(ws[i]));

  // psi = phi /\ (s|_{p1} = w1) /\ ... ; a plain `true` body is dropped when
  // equations exist.
  std::optional<LogicalConstraint> psi;
  if (!(e.constraint().body().is_top() && !ps.empty()))
    psi = e.constraint().body();
  Substitution back;
  for (size_t i = 0; i < ps.size(); ++i) {
    const Term& sub = subterm_at(s, ps[i]);
    LogicalConstraint eq = mk_eq(sub, Term::var(ws[i]));
    psi = psi ? (*psi && eq) : eq;
    back.set(ws[i], sub);
  }

  // Bound sequence: the old bound variables, then X in term order.
  std::vector<Variable> bound = e.constraint().bound_seq();
  for (const Variable& x : variables_in_order(s))
    if (e.logical_vars().count(x)) bound.push_back(x);

  ECTerm result(VariableSet(ws.begin(), ws.end()), std::move(t),
                ExistentialConstraint(std::move(bound), std::move(*psi)));
  return PGResult{std::move(result), std::move(ps), std::move(ws),
                  std::move(back)};
}

Verdict back_validity_check(const ECTerm& e, const PGResult& r,
                            SolverBackend& backend) {
  // (E y.psi)sigma with sigma mapping wi back to s|_{pi}: the images mention
  // variables of X, which are bound in psi, so the bound block is freshened
  // first (the models are unchanged).
  VariableSet avoid = variables(e.term());
  VariableSet cv = e.constraint().body().variables();
  avoid.insert(cv.begin(), cv.end());
  ExistentialConstraint fresh = freshen_bound(r.result.constraint(), avoid);
  ExistentialConstraint substituted = apply_subst_ec(fresh, r.back_substitution);
  Query q = Query::validity(QueryFormula::iff(
      QueryFormula::leaf(e.constraint()), QueryFormula::leaf(substituted)));
  return backend.check_valid(q);
}

}  // namespace ect
