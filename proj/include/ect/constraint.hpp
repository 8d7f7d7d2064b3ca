#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ect/term.hpp"

namespace ect {

/// Boolean term over theory symbols and theory-sorted variables.
class LogicalConstraint {
 public:
  explicit LogicalConstraint(Term t);
  static LogicalConstraint top();

  const Term& term() const { return term_; }
  VariableSet variables() const { return ect::variables(term_); }

  bool is_top() const;
  bool operator==(const LogicalConstraint& o) const { return term_ == o.term_; }
  bool operator!=(const LogicalConstraint& o) const { return !(*this == o); }

 private:
  Term term_;
};

LogicalConstraint operator&&(const LogicalConstraint& a,
                             const LogicalConstraint& b);
LogicalConstraint mk_eq(const Term& a, const Term& b);

/// Pair of a duplicate-free bound-variable sequence and a constraint body
/// with {bound}  within Var(body). Not identified up to renaming of the bound
/// variables; equality is syntactic.
class ExistentialConstraint {
 public:
  ExistentialConstraint(std::vector<Variable> bound, LogicalConstraint body);
  explicit ExistentialConstraint(LogicalConstraint body)
      : ExistentialConstraint({}, std::move(body)) {}

  const std::vector<Variable>& bound_seq() const { return bound_; }
  const LogicalConstraint& body() const { return body_; }

  VariableSet free_vars() const;
  VariableSet bound_vars() const;

  bool operator==(const ExistentialConstraint& o) const {
    return bound_ == o.bound_ && body_ == o.body_;
  }
  bool operator!=(const ExistentialConstraint& o) const {
    return !(*this == o);
  }

 private:
  std::vector<Variable> bound_;
  LogicalConstraint body_;
};

ExistentialConstraint mk_existential(std::vector<Variable> bound,
                                     LogicalConstraint body);

std::pair<VariableSet, VariableSet> free_and_bound(
    const ExistentialConstraint& c);

/// Substitution on the free variables only; the bound sequence is kept.
/// Throws CaptureError if a substituted term mentions a bound variable.
ExistentialConstraint apply_subst_ec(const ExistentialConstraint& c,
                                     const Substitution& s);

/// Checks the three equivalent formulations of the variable condition
/// relating a term and a constraint, asserts that they agree, and returns
/// their shared value.
bool variable_condition_variants(const Term& s, const ExistentialConstraint& c);

/// Replaces the bound variables by fresh ones (all occurrences, bound list
/// and body). Produces a syntactically different constraint with the same
/// models; fresh names avoid Var(body), `avoid`, and each other.
ExistentialConstraint freshen_bound(const ExistentialConstraint& c,
                                    const VariableSet& avoid);

/// Simultaneous bound-variable renaming with caller-chosen targets; the
/// targets must be pairwise distinct and must avoid the free variables.
ExistentialConstraint rename_bound(const ExistentialConstraint& c,
                                   const std::map<Variable, Variable>& to);

std::string print_constraint(const LogicalConstraint& c);
std::string print_constraint(const ExistentialConstraint& c);

}  // namespace ect
