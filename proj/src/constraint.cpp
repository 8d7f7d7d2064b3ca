#include "ect/constraint.hpp"

#include <algorithm>
#include <sstream>

#include "ect/printer.hpp"

namespace ect {

namespace {

void validate_logical(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (!t.variable().sort.is_theory())
        throw SortError("variable " + t.variable().name +
                        " in a logical constraint has non-theory sort " +
                        t.variable().sort.name);
      return;
    case Term::Kind::Value:
      return;
    case Term::Kind::Hole:
      throw SortError("hole inside a logical constraint");
    case Term::Kind::Application:
      if (!t.symbol().is_theory())
        throw SortError("non-theory symbol '" + t.symbol().name +
                        "' in a logical constraint");
      for (const Term& a : t.args()) validate_logical(a);
      return;
  }
}

Term raw_var_swap(const Term& t, const std::map<Variable, Variable>& m) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = m.find(t.variable());
      return it == m.end() ? t : Term::var(it->second);
    }
    case Term::Kind::Value:
    case Term::Kind::Hole:
      return t;
    case Term::Kind::Application: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(raw_var_swap(a, m));
      return Term::app(t.symbol(), std::move(args));
    }
  }
  throw Error("unreachable");
}

}  // namespace

LogicalConstraint::LogicalConstraint(Term t) : term_(std::move(t)) {
  if (term_.sort() != sort_bool())
    throw SortError("logical constraint must have sort Bool, got " +
                    term_.sort().name);
  validate_logical(term_);
}

LogicalConstraint LogicalConstraint::top() {
  return LogicalConstraint(Term::val(Value(true)));
}

bool LogicalConstraint::is_top() const {
  return term_.is_value() && term_.value().as_bool();
}

LogicalConstraint operator&&(const LogicalConstraint& a,
                             const LogicalConstraint& b) {
  const FunctionSymbol* f =
      Signature::theory_symbol("/\\", std::vector<Sort>{sort_bool(), sort_bool()});
  return LogicalConstraint(Term::app(*f, {a.term(), b.term()}));
}

LogicalConstraint mk_eq(const Term& a, const Term& b) {
  std::vector<Sort> sig{a.sort(), b.sort()};
  const FunctionSymbol* f = Signature::theory_symbol("=", sig);
  if (!f)
    throw SortError("no equality at sorts " + a.sort().name + ", " +
                    b.sort().name);
  return LogicalConstraint(Term::app(*f, {a, b}));
}

ExistentialConstraint::ExistentialConstraint(std::vector<Variable> bound,
                                             LogicalConstraint body)
    : bound_(std::move(bound)), body_(std::move(body)) {
  VariableSet seen;
  for (const Variable& x : bound_) {
    if (!seen.insert(x).second)
      throw IllFormed("duplicate-bound",
                      "bound variable " + x.name + " listed twice");
  }
  VariableSet in_body = body_.variables();
  for (const Variable& x : bound_) {
    if (!in_body.count(x))
      throw IllFormed("bound-not-in-body",
                      "bound variable " + x.name +
                          " does not occur in the constraint body");
  }
}

ExistentialConstraint mk_existential(std::vector<Variable> bound,
                                     LogicalConstraint body) {
  return ExistentialConstraint(std::move(bound), std::move(body));
}

VariableSet ExistentialConstraint::free_vars() const {
  VariableSet out = body_.variables();
  for (const Variable& x : bound_) out.erase(x);
  return out;
}

VariableSet ExistentialConstraint::bound_vars() const {
  return VariableSet(bound_.begin(), bound_.end());
}

std::pair<VariableSet, VariableSet> free_and_bound(
    const ExistentialConstraint& c) {
  return {c.free_vars(), c.bound_vars()};
}

ExistentialConstraint apply_subst_ec(const ExistentialConstraint& c,
                                     const Substitution& s) {
  Substitution free_only = s.restricted(c.free_vars());
  VariableSet bound = c.bound_vars();
  for (const auto& [x, t] : free_only.bindings()) {
    for (const Variable& v : variables(t)) {
      if (bound.count(v))
        throw CaptureError("substituting " + x.name + " introduces bound variable " +
                           v.name + " into the constraint body");
    }
  }
  return ExistentialConstraint(c.bound_seq(),
                               LogicalConstraint(free_only(c.body().term())));
}

bool variable_condition_variants(const Term& s,
                                 const ExistentialConstraint& c) {
  VariableSet fv = c.free_vars();
  VariableSet bv = c.bound_vars();
  VariableSet sv = variables(s);
  VariableSet phiv = c.body().variables();

  auto subset = [](const VariableSet& a, const VariableSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  auto inter = [](const VariableSet& a, const VariableSet& b) {
    VariableSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(out, out.end()));
    return out;
  };
  auto diff = [](const VariableSet& a, const VariableSet& b) {
    VariableSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
    return out;
  };

  bool c1 = subset(fv, sv) && inter(bv, sv).empty();
  bool c2 = bv == diff(phiv, sv);
  bool c3 = fv == inter(phiv, sv);
  if (c1 != c2 || c2 != c3)
    throw Error("variable-condition formulations disagree (internal bug)");
  return c1;
}

ExistentialConstraint rename_bound(const ExistentialConstraint& c,
                                   const std::map<Variable, Variable>& to) {
  VariableSet fv = c.free_vars();
  VariableSet targets;
  std::vector<Variable> fresh_seq;
  for (const Variable& x : c.bound_seq()) {
    auto it = to.find(x);
    Variable t = it == to.end() ? x : it->second;
    if (t.sort != x.sort)
      throw SortError("bound renaming changes the sort of " + x.name);
    if (fv.count(t))
      throw CaptureError("bound renaming target " + t.name +
                         " captures a free variable");
    if (!targets.insert(t).second)
      throw Error("bound renaming targets collide at " + t.name);
    fresh_seq.push_back(t);
  }
  std::map<Variable, Variable> swap;
  for (size_t i = 0; i < fresh_seq.size(); ++i)
    if (!(c.bound_seq()[i] == fresh_seq[i]))
      swap.emplace(c.bound_seq()[i], fresh_seq[i]);
  Term body = raw_var_swap(c.body().term(), swap);
  return ExistentialConstraint(std::move(fresh_seq), LogicalConstraint(body));
}

ExistentialConstraint freshen_bound(const ExistentialConstraint& c,
                                    const VariableSet& avoid) {
  static thread_local unsigned long counter = 0;
  VariableSet taken = c.body().variables();
  taken.insert(avoid.begin(), avoid.end());
  std::map<Variable, Variable> swap;
  std::vector<Variable> fresh_seq;
  for (const Variable& x : c.bound_seq()) {
    Variable f = x;
    do {
      f.name = x.name + "!" + std::to_string(counter++);
    } while (taken.count(f));
    taken.insert(f);
    swap.emplace(x, f);
    fresh_seq.push_back(f);
  }
  Term body = raw_var_swap(c.body().term(), swap);
  return ExistentialConstraint(std::move(fresh_seq), LogicalConstraint(body));
}

std::string print_constraint(const LogicalConstraint& c) {
  return print_term(c.term());
}

std::string print_constraint(const ExistentialConstraint& c) {
  if (c.bound_seq().empty()) return print_constraint(c.body());
  std::ostringstream out;
  out << "E ";
  for (size_t i = 0; i < c.bound_seq().size(); ++i) {
    if (i) out << ", ";
    out << c.bound_seq()[i].name;
  }
  out << ". " << print_constraint(c.body());
  return out.str();
}

}  // namespace ect
