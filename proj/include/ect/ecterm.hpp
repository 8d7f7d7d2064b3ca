#pragma once

#include <optional>
#include <string>

#include "ect/constraint.hpp"
#include "ect/solver.hpp"
#include "ect/term.hpp"

namespace ect {

/// Existentially constrained term <X | s | E x... . phi>: the logical
/// variables X are sandwiched between the constraint's free variables and
/// Var(s), and the bound variables stay out of s. Checked at construction.
class ECTerm {
 public:
  ECTerm(VariableSet logical_vars, Term term, ExistentialConstraint constraint);

  const VariableSet& logical_vars() const { return logical_; }
  const Term& term() const { return term_; }
  const ExistentialConstraint& constraint() const { return constraint_; }

  bool operator==(const ECTerm& o) const {
    return logical_ == o.logical_ && term_ == o.term_ &&
           constraint_ == o.constraint_;
  }
  bool operator!=(const ECTerm& o) const { return !(*this == o); }

 private:
  VariableSet logical_;
  Term term_;
  ExistentialConstraint constraint_;
};

ECTerm mk_ecterm(VariableSet logical_vars, Term term,
                 ExistentialConstraint constraint);

Verdict is_satisfiable(const ECTerm& e, SolverBackend& backend);

/// Holds iff sigma maps every free variable of c to a value and the
/// substituted constraint is valid.
Verdict respects(const Substitution& sigma, const ExistentialConstraint& c,
                 SolverBackend& backend);

struct WitnessResult {
  std::optional<Substitution> witness;  // X-valued, Dom = X, respects c
  Verdict status;                       // Holds / Fails(unsat) / Unknown
};

WitnessResult witness_substitution(const ECTerm& e, SolverBackend& backend);

/// Embedding of a classical constrained term s [phi]: X is the set of
/// shared variables of s and phi, the bound sequence is Var(phi) \ Var(s)
/// in first-occurrence order.
ECTerm embed(const Term& s, const LogicalConstraint& phi);

std::string print_ecterm(const ECTerm& e);

}  // namespace ect
