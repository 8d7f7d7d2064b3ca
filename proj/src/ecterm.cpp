#include "ect/ecterm.hpp"

#include <algorithm>
#include <sstream>

#include "ect/printer.hpp"

namespace ect {

ECTerm::ECTerm(VariableSet logical_vars, Term term,
               ExistentialConstraint constraint)
    : logical_(std::move(logical_vars)),
      term_(std::move(term)),
      constraint_(std::move(constraint)) {
  VariableSet fv = constraint_.free_vars();
  VariableSet sv = variables(term_);
  for (const Variable& x : fv) {
    if (!logical_.count(x))
      throw IllFormed("fvar-not-in-X", "free constraint variable " + x.name +
                                           " is not a logical variable");
  }
  for (const Variable& x : logical_) {
    if (!sv.count(x))
      throw IllFormed("X-not-in-term", "logical variable " + x.name +
                                           " does not appear in the term");
    if (!x.sort.is_theory())
      throw IllFormed("non-theory-logical-var",
                      "logical variable " + x.name + " has non-theory sort " +
                          x.sort.name);
  }
  for (const Variable& x : constraint_.bound_vars()) {
    if (sv.count(x))
      throw IllFormed("bound-in-term", "bound variable " + x.name +
                                           " appears in the term");
  }
  // The sandwich above is exactly the first formulation of the variable
  // condition; the other two must agree with it.
  if (!variable_condition_variants(term_, constraint_))
    throw Error("variable condition check out of sync (internal bug)");
}

ECTerm mk_ecterm(VariableSet logical_vars, Term term,
                 ExistentialConstraint constraint) {
  return ECTerm(std::move(logical_vars), std::move(term),
                std::move(constraint));
}

Verdict is_satisfiable(const ECTerm& e, SolverBackend& backend) {
  return backend.check_sat(e.constraint());
}

Verdict respects(const Substitution& sigma, const ExistentialConstraint& c,
                 SolverBackend& backend) {
  for (const Variable& x : c.free_vars()) {
    const Term* t = sigma.find(x);
    if (!t)
      return Verdict::fails(std::nullopt,
                            "free variable " + x.name + " is not instantiated");
    if (!t->is_value())
      return Verdict::fails(std::nullopt, "sigma(" + x.name +
                                              ") = " + print_term(*t) +
                                              " is not a value");
  }
  ExistentialConstraint instantiated = apply_subst_ec(c, sigma);
  return backend.check_valid(
      Query::validity(QueryFormula::leaf(instantiated)));
}

WitnessResult witness_substitution(const ECTerm& e, SolverBackend& backend) {
  ModelResult m = backend.find_model(e.constraint());
  if (!m.model) {
    if (m.definitive_no)
      return {std::nullopt, Verdict::fails(std::nullopt, "unsatisfiable")};
    return {std::nullopt, Verdict::unknown(m.note)};
  }
  Substitution gamma;
  for (const Variable& x : e.logical_vars())
    gamma.set(x, Term::val((*m.model)(x)));
  return {std::move(gamma), Verdict::holds()};
}

ECTerm embed(const Term& s, const LogicalConstraint& phi) {
  VariableSet sv = variables(s);
  VariableSet X;
  for (const Variable& x : phi.variables())
    if (sv.count(x)) X.insert(x);
  std::vector<Variable> bound;
  for (const Variable& x : variables_in_order(phi.term()))
    if (!sv.count(x)) bound.push_back(x);
  return ECTerm(std::move(X), s,
                ExistentialConstraint(std::move(bound), phi));
}

std::string print_ecterm(const ECTerm& e) {
  std::ostringstream out;
  out << "<{";
  bool first = true;
  for (const Variable& x : e.logical_vars()) {
    if (!first) out << ", ";
    first = false;
    out << x.name;
  }
  out << "} | " << print_term(e.term()) << " | "
      << print_constraint(e.constraint()) << ">";
  return out.str();
}

}  // namespace ect
