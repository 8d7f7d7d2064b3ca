#include "ect/equiv.hpp"

#include <algorithm>

#include "ect/printer.hpp"

namespace ect {

int PositionClasses::class_index(const Position& p) const {
  for (size_t i = 0; i < classes.size(); ++i)
    if (std::binary_search(classes[i].begin(), classes[i].end(), p))
      return static_cast<int>(i);
  return -1;
}

bool PositionClasses::same_class(const Position& p, const Position& q) const {
  int i = class_index(p);
  return i >= 0 && i == class_index(q);
}

namespace {

ExistentialConstraint fresh_constraint(const ECTerm& e,
                                       const VariableSet& extra_avoid = {}) {
  VariableSet avoid = variables(e.term());
  VariableSet cv = e.constraint().body().variables();
  avoid.insert(cv.begin(), cv.end());
  avoid.insert(extra_avoid.begin(), extra_avoid.end());
  return freshen_bound(e.constraint(), avoid);
}

/// |= (E x.phi) => (a = b), with the premise's bound block freshened away
/// from the equation's variables.
Query implication_query(const ECTerm& e, const Term& a, const Term& b) {
  ExistentialConstraint premise = e.constraint();
  if (!premise.bound_seq().empty()) premise = fresh_constraint(e);
  return Query::validity(QueryFormula::implies(
      QueryFormula::leaf(premise), QueryFormula::leaf(mk_eq(a, b))));
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int i, int j) {
    i = find(i);
    j = find(j);
    if (i != j) parent[std::max(i, j)] = std::min(i, j);
  }
};

}  // namespace

PositionClasses position_classes(const ECTerm& e, SolverBackend& backend) {
  PositionClasses pc;
  const Term& s = e.term();
  pc.base = positions_of(s, e.logical_vars(), true);
  const size_t n = pc.base.size();
  std::vector<Term> subs;
  subs.reserve(n);
  for (const Position& p : pc.base) subs.push_back(subterm_at(s, p));

  UnionFind uf(n);
  // Syntactically equal subterms are related; no solver call needed.
  std::map<Term, int, TermLess> first_seen;
  for (size_t i = 0; i < n; ++i) {
    auto [it, inserted] = first_seen.emplace(subs[i], static_cast<int>(i));
    if (!inserted) uf.unite(it->second, static_cast<int>(i));
  }
  // Solver queries only across current class representatives.
  for (size_t i = 0; i < n; ++i) {
    if (uf.find(static_cast<int>(i)) != static_cast<int>(i)) continue;
    for (size_t j = i + 1; j < n; ++j) {
      if (uf.find(static_cast<int>(j)) != static_cast<int>(j)) continue;
      if (uf.find(static_cast<int>(i)) == uf.find(static_cast<int>(j)))
        continue;
      if (subs[i].sort() != subs[j].sort()) continue;
      Query q = implication_query(e, subs[i], subs[j]);
      Verdict v = backend.check_valid(q);
      if (v.is_holds()) {
        uf.unite(static_cast<int>(i), static_cast<int>(j));
        pc.discharged.push_back(q);
      } else if (v.is_unknown()) {
        pc.unknown_pairs.emplace_back(pc.base[i], pc.base[j]);
      }
    }
  }

  std::map<int, std::vector<Position>> by_root;
  for (size_t i = 0; i < n; ++i)
    by_root[uf.find(static_cast<int>(i))].push_back(pc.base[i]);
  for (auto& [root, members] : by_root) {
    std::sort(members.begin(), members.end());
    pc.representatives.push_back(members.front());
    pc.classes.push_back(std::move(members));
  }

  // Forced values, per class: a value member settles the class; otherwise a
  // witness model proposes the candidate and one validity query confirms it.
  std::optional<Valuation> model;
  bool model_tried = false;
  for (size_t ci = 0; ci < pc.classes.size(); ++ci) {
    const std::vector<Position>& members = pc.classes[ci];
    std::optional<Value> forced;
    for (const Position& p : members) {
      const Term& sub = subterm_at(s, p);
      if (sub.is_value()) {
        if (forced && !(*forced == sub.value()))
          throw Error("distinct values in one position class (unsatisfiable input?)");
        forced = sub.value();
      }
    }
    if (!forced) {
      const Term& rep_sub = subterm_at(s, pc.representatives[ci]);
      if (!model_tried) {
        model_tried = true;
        ModelResult m = backend.find_model(e.constraint());
        if (m.model) {
          model = std::move(m.model);
        } else if (m.definitive_no) {
          throw PreconditionError(
              "position_classes requires a satisfiable input");
        } else {
          pc.degraded = "no witness model: " + m.note;
        }
      }
      if (!model) {
        pc.unknown_forced.push_back(pc.representatives[ci]);
        continue;
      }
      Value candidate = eval(rep_sub, *model);
      Query q = implication_query(e, rep_sub, Term::val(candidate));
      Verdict v = backend.check_valid(q);
      if (v.is_holds()) {
        forced = candidate;
        pc.discharged.push_back(q);
      } else if (v.is_unknown()) {
        pc.unknown_forced.push_back(pc.representatives[ci]);
      }
    }
    if (forced) {
      for (const Position& p : members) {
        pc.val_forced.insert(p);
        pc.forced_value.emplace(p, *forced);
      }
    }
  }
  return pc;
}

Substitution RepSubstitution::as_substitution() const {
  Substitution out;
  for (const auto& [x, t] : map) out.set(x, t);
  return out;
}

std::vector<Term> RepSubstitution::image() const {
  std::vector<Term> out;
  for (const auto& [x, t] : map) out.push_back(t);
  return out;
}

VariableSet RepSubstitution::variable_image() const {
  VariableSet out;
  for (const auto& [x, t] : map)
    if (t.is_var()) out.insert(t.variable());
  return out;
}

RepSubstitution representative_substitution(const ECTerm& e,
                                            const PositionClasses& pc) {
  RepSubstitution mu;
  const Term& s = e.term();
  for (const Variable& z : e.logical_vars()) {
    std::vector<Position> zs = positions_of(s, {z}, false);
    if (zs.empty()) throw Error("logical variable missing from term");
    // All occurrences of z are syntactically equal, hence one class.
    const Position& p = zs.front();
    if (pc.val_forced.count(p)) {
      mu.map.emplace(z, Term::val(pc.forced_value.at(p)));
    } else {
      int ci = pc.class_index(p);
      if (ci < 0) throw Error("position escaped its class (internal bug)");
      mu.map.emplace(z, subterm_at(s, pc.representatives[ci]));
    }
  }
  return mu;
}

EquivReport EquivReport::mk_equivalent(std::string route,
                                       std::optional<Renaming> renaming,
                                       std::vector<Query> queries) {
  EquivReport r;
  r.outcome = Outcome::Equivalent;
  r.route = std::move(route);
  r.certificate_renaming = std::move(renaming);
  r.certificate_queries = std::move(queries);
  return r;
}

EquivReport EquivReport::mk_not_equivalent(std::string route,
                                           std::string condition,
                                           std::optional<Valuation> witness) {
  EquivReport r;
  r.outcome = Outcome::NotEquivalent;
  r.route = std::move(route);
  r.failed_condition = std::move(condition);
  r.witness = std::move(witness);
  return r;
}

EquivReport EquivReport::mk_unknown(std::string route, std::string reason) {
  EquivReport r;
  r.outcome = Outcome::Unknown;
  r.route = std::move(route);
  r.reason = std::move(reason);
  return r;
}

namespace {

/// Satisfiability gate shared by the routes: throws on a definite
/// violation, reports Unknown upward, passes on Holds.
std::optional<EquivReport> require_satisfiable(const ECTerm& e1,
                                               const ECTerm& e2,
                                               SolverBackend& backend,
                                               const std::string& route) {
  for (const ECTerm* e : {&e1, &e2}) {
    Verdict v = is_satisfiable(*e, backend);
    if (v.is_fails())
      throw PreconditionError(route + " requires satisfiable inputs");
    if (v.is_unknown())
      return EquivReport::mk_unknown(route,
                                     "satisfiability undetermined: " + v.reason);
  }
  return std::nullopt;
}

/// (c1).delta <=> c2, built capture-free by freshening bound blocks first.
Query biconditional_query(const ECTerm& e1, const ECTerm& e2,
                          const Substitution& delta) {
  VariableSet avoid = variables(e2.term());
  for (const auto& [a, b] : delta.bindings()) {
    VariableSet tv = variables(b);
    avoid.insert(tv.begin(), tv.end());
  }
  ExistentialConstraint left =
      apply_subst_ec(fresh_constraint(e1, avoid), delta);
  ExistentialConstraint right = e2.constraint();
  return Query::validity(QueryFormula::iff(QueryFormula::leaf(left),
                                           QueryFormula::leaf(right)));
}

/// Pairs the variable positions of two hole-aligned context skeletons;
/// nullopt when the contexts cannot be matched by any renaming.
bool context_var_pairs(const Term& a, const Term& b,
                       std::vector<std::pair<Variable, Variable>>& out) {
  if (a.is_hole() || b.is_hole())
    return a.is_hole() && b.is_hole() && a.hole_index() == b.hole_index() &&
           a.sort() == b.sort();
  if (a.is_var() || b.is_var()) {
    if (!a.is_var() || !b.is_var()) return false;
    if (a.sort() != b.sort()) return false;
    out.emplace_back(a.variable(), b.variable());
    return true;
  }
  if (a.is_value() || b.is_value()) return a == b;
  if (!(a.symbol() == b.symbol())) return false;
  for (size_t i = 0; i < a.args().size(); ++i)
    if (!context_var_pairs(a.args()[i], b.args()[i], out)) return false;
  return true;
}

std::optional<Renaming> context_renaming(const Context& c1, const Context& c2) {
  std::vector<std::pair<Variable, Variable>> pairs;
  if (!context_var_pairs(c1.skeleton(), c2.skeleton(), pairs))
    return std::nullopt;
  try {
    Renaming r = Renaming::from_pairs(pairs);
    if (!(c1.renamed(r) == c2)) return std::nullopt;
    return r;
  } catch (const Error&) {
    return std::nullopt;  // pairing not functional/injective
  }
}

}  // namespace

std::optional<Renaming> renaming_between(const Term& s, const Term& t) {
  std::vector<std::pair<Variable, Variable>> pairs;
  if (!context_var_pairs(s, t, pairs)) return std::nullopt;
  try {
    Renaming r = Renaming::from_pairs(pairs);
    if (!(r(s) == t)) return std::nullopt;
    return r;
  } catch (const Error&) {
    return std::nullopt;
  }
}

EquivReport equiv_by_renaming(const ECTerm& e1, const ECTerm& e2,
                              const Renaming& delta, SolverBackend& backend) {
  const std::string route = "renaming";
  if (!(delta(e1.term()) == e2.term()))
    throw PreconditionError("equiv_by_renaming requires s.delta = t");
  if (auto u = require_satisfiable(e1, e2, backend, route)) return *u;

  if (delta.image(e1.logical_vars()) != e2.logical_vars())
    return EquivReport::mk_not_equivalent(route, "renaming-X-image",
                                          std::nullopt);
  Query q = biconditional_query(e1, e2, delta.as_substitution());
  Verdict v = backend.check_valid(q);
  if (v.is_holds()) return EquivReport::mk_equivalent(route, delta, {q});
  if (v.is_fails())
    return EquivReport::mk_not_equivalent(route, "constraint-biconditional",
                                          v.witness);
  return EquivReport::mk_unknown(route, v.reason);
}

EquivReport equiv_same_term(const ECTerm& e1, const ECTerm& e2,
                            SolverBackend& backend) {
  if (e1.term() != e2.term())
    throw PreconditionError("equiv_same_term requires equal term parts");
  EquivReport r = equiv_by_renaming(e1, e2, Renaming(), backend);
  r.route = "same-term";
  return r;
}

EquivReport equiv_pattern_general(const ECTerm& e1, const ECTerm& e2,
                                  SolverBackend& backend) {
  const std::string route = "pattern-general";
  if (!is_pattern_general(e1) || !is_pattern_general(e2))
    throw PreconditionError(
        "equiv_pattern_general requires pattern-general inputs");
  if (auto u = require_satisfiable(e1, e2, backend, route)) return *u;

  const Term& s = e1.term();
  const Term& t = e2.term();
  std::vector<Position> ps = positions_of(s, e1.logical_vars(), true);
  std::vector<Position> pt = positions_of(t, e2.logical_vars(), true);
  if (ps != pt)
    return EquivReport::mk_not_equivalent(route, "logical-positions",
                                          std::nullopt);

  std::optional<Renaming> theta =
      context_renaming(multihole_context(s, ps), multihole_context(t, ps));
  if (!theta)
    return EquivReport::mk_not_equivalent(route, "context-renaming",
                                          std::nullopt);

  std::vector<std::pair<Variable, Variable>> pairs;
  for (const auto& [a, b] : theta->bindings()) pairs.emplace_back(a, b);
  for (const Position& p : ps) {
    const Term& zs = subterm_at(s, p);
    const Term& wt = subterm_at(t, p);
    if (!zs.is_var() || !wt.is_var() || zs.sort() != wt.sort())
      return EquivReport::mk_not_equivalent(route, "logical-pairing",
                                            std::nullopt);
    pairs.emplace_back(zs.variable(), wt.variable());
  }
  Renaming rho;
  try {
    rho = Renaming::from_pairs(pairs);
  } catch (const Error&) {
    return EquivReport::mk_not_equivalent(route, "renaming-construction",
                                          std::nullopt);
  }
  if (!(rho(s) == t))
    return EquivReport::mk_not_equivalent(route, "term-correspondence",
                                          std::nullopt);
  if (rho.image(e1.logical_vars()) != e2.logical_vars())
    return EquivReport::mk_not_equivalent(route, "renaming-X-image",
                                          std::nullopt);

  Query q = biconditional_query(e1, e2, rho.as_substitution());
  Verdict v = backend.check_valid(q);
  if (v.is_holds()) return EquivReport::mk_equivalent(route, rho, {q});
  if (v.is_fails())
    return EquivReport::mk_not_equivalent(route, "constraint-biconditional",
                                          v.witness);
  return EquivReport::mk_unknown(route, v.reason);
}

EquivReport equiv_via_pg(const ECTerm& e1, const ECTerm& e2,
                         SolverBackend& backend) {
  if (auto u = require_satisfiable(e1, e2, backend, "pg-transform")) return *u;
  PGResult r1 = pg_transform(e1);
  PGResult r2 = pg_transform(e2);
  EquivReport r = equiv_pattern_general(r1.result, r2.result, backend);
  r.route = "pg-transform";
  return r;
}

EquivReport equiv_general(const ECTerm& e1, const ECTerm& e2,
                          SolverBackend& backend) {
  const std::string route = "general";
  if (auto u = require_satisfiable(e1, e2, backend, route)) return *u;

  const Term& s = e1.term();
  const Term& t = e2.term();

  // (1) the X+Val position sets coincide
  std::vector<Position> ps = positions_of(s, e1.logical_vars(), true);
  std::vector<Position> pt = positions_of(t, e2.logical_vars(), true);
  if (ps != pt)
    return EquivReport::mk_not_equivalent(route, "1:positions", std::nullopt);

  // (2) a renaming matches the multihole contexts outside those positions
  std::optional<Renaming> rho =
      context_renaming(multihole_context(s, ps), multihole_context(t, ps));
  if (!rho)
    return EquivReport::mk_not_equivalent(route, "2:context-renaming",
                                          std::nullopt);

  PositionClasses pc1 = position_classes(e1, backend);
  PositionClasses pc2 = position_classes(e2, backend);
  if (!pc1.fully_determined() || !pc2.fully_determined())
    return EquivReport::mk_unknown(
        route, "position-class computation degraded to unknown");

  // (3) the partitions coincide
  if (pc1.classes != pc2.classes)
    return EquivReport::mk_not_equivalent(route, "3:class-agreement",
                                          std::nullopt);

  // (4) the value-forced positions and their forced values coincide
  if (pc1.val_forced != pc2.val_forced || pc1.forced_value != pc2.forced_value)
    return EquivReport::mk_not_equivalent(route, "4:forced-values",
                                          std::nullopt);

  // (5) theta restricted to representative, non-forced positions is a
  // renaming and the mu-instantiated constraints are equivalent
  RepSubstitution mu1 = representative_substitution(e1, pc1);
  RepSubstitution mu2 = representative_substitution(e2, pc2);
  std::vector<std::pair<Variable, Variable>> tpairs;
  VariableSet ytilde = mu2.variable_image();
  for (const Position& rep : pc1.representatives) {
    if (pc1.val_forced.count(rep)) continue;
    const Term& a = subterm_at(s, rep);
    const Term& b = subterm_at(t, rep);
    if (!a.is_var() || !b.is_var() || a.sort() != b.sort())
      return EquivReport::mk_not_equivalent(route, "5:theta-not-renaming",
                                            std::nullopt);
    if (!ytilde.count(b.variable()))
      return EquivReport::mk_not_equivalent(route, "5:theta-not-renaming",
                                            std::nullopt);
    tpairs.emplace_back(a.variable(), b.variable());
  }
  Renaming theta;
  try {
    theta = Renaming::from_pairs(tpairs);
  } catch (const Error&) {
    return EquivReport::mk_not_equivalent(route, "5:theta-not-renaming",
                                          std::nullopt);
  }

  VariableSet avoid = variables(t);
  ExistentialConstraint left = apply_subst_ec(
      apply_subst_ec(fresh_constraint(e1, avoid), mu1.as_substitution()),
      theta.as_substitution());
  ExistentialConstraint right =
      apply_subst_ec(fresh_constraint(e2), mu2.as_substitution());
  Query q = Query::validity(QueryFormula::iff(QueryFormula::leaf(left),
                                              QueryFormula::leaf(right)));
  Verdict v = backend.check_valid(q);
  if (v.is_unknown()) return EquivReport::mk_unknown(route, v.reason);
  if (v.is_fails())
    return EquivReport::mk_not_equivalent(route, "5:mu-biconditional",
                                          v.witness);

  std::vector<Query> queries = std::move(pc1.discharged);
  queries.insert(queries.end(), pc2.discharged.begin(), pc2.discharged.end());
  queries.push_back(q);
  return EquivReport::mk_equivalent(route, rho, std::move(queries));
}

EquivReport equiv_auto(const ECTerm& e1, const ECTerm& e2,
                       SolverBackend& backend, Method method, bool paranoid) {
  Verdict s1 = is_satisfiable(e1, backend);
  Verdict s2 = is_satisfiable(e2, backend);
  if (s1.is_unknown() || s2.is_unknown())
    return EquivReport::mk_unknown(
        "auto", "satisfiability undetermined: " +
                    (s1.is_unknown() ? s1.reason : s2.reason));
  if (s1.is_fails() && s2.is_fails()) {
    // All unsatisfiable existentially constrained terms are equivalent.
    return EquivReport::mk_equivalent("unsat-unsat", std::nullopt, {});
  }
  if (s1.is_fails() != s2.is_fails())
    return EquivReport::mk_not_equivalent("sat-mismatch",
                                          "satisfiability-mismatch",
                                          std::nullopt);

  EquivReport report;
  switch (method) {
    case Method::Renaming: {
      std::optional<Renaming> delta = renaming_between(e1.term(), e2.term());
      if (!delta)
        throw PreconditionError(
            "renaming route inapplicable: term parts are not renamed variants");
      report = equiv_by_renaming(e1, e2, *delta, backend);
      break;
    }
    case Method::Pg:
      report = equiv_via_pg(e1, e2, backend);
      break;
    case Method::General:
      report = equiv_general(e1, e2, backend);
      break;
    case Method::Auto:
      if (e1.term() == e2.term()) {
        report = equiv_same_term(e1, e2, backend);
      } else if (is_pattern_general(e1) && is_pattern_general(e2)) {
        report = equiv_pattern_general(e1, e2, backend);
      } else {
        report = equiv_general(e1, e2, backend);
      }
      break;
  }

  if (paranoid) {
    EquivReport a = equiv_general(e1, e2, backend);
    EquivReport b = equiv_via_pg(e1, e2, backend);
    if (a.definite() && b.definite() && a.outcome != b.outcome)
      throw Error("paranoid cross-check failed: general and PG routes disagree");
    if (report.definite() && a.definite() && report.outcome != a.outcome)
      throw Error("paranoid cross-check failed: dispatch disagrees with general route");
  }
  return report;
}

}  // namespace ect
