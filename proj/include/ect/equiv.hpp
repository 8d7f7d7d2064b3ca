#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ect/ecterm.hpp"
#include "ect/pg.hpp"

namespace ect {

/// Quotient of Pos_{X+Val}(s) under the constraint-entailed equality of
/// subterms, with least-position representatives, the value-forced subset,
/// and the forced values.
struct PositionClasses {
  std::vector<Position> base;                   // shortlex
  std::vector<std::vector<Position>> classes;   // ordered by least member
  std::vector<Position> representatives;        // least member of each class
  std::set<Position> val_forced;                // Pos_Val!
  std::map<Position, Value> forced_value;       // defined on val_forced
  std::vector<std::pair<Position, Position>> unknown_pairs;
  std::vector<Position> unknown_forced;
  std::string degraded;           // nonempty when the whole computation degraded
  std::vector<Query> discharged;  // queries that returned Holds

  int class_index(const Position& p) const;
  bool same_class(const Position& p, const Position& q) const;
  bool fully_determined() const {
    return unknown_pairs.empty() && unknown_forced.empty() && degraded.empty();
  }
};

PositionClasses position_classes(const ECTerm& e, SolverBackend& backend);

/// mu_X: maps each logical variable to its forced value, or to the variable
/// at its class representative. Identity images are kept in `map`.
struct RepSubstitution {
  std::map<Variable, Term> map;

  Substitution as_substitution() const;
  /// mu_X(X): the image set.
  std::vector<Term> image() const;
  /// X-tilde: the logical variables among the images.
  VariableSet variable_image() const;
};

RepSubstitution representative_substitution(const ECTerm& e,
                                            const PositionClasses& pc);

struct EquivReport {
  enum class Outcome { Equivalent, NotEquivalent, Unknown };

  Outcome outcome = Outcome::Unknown;
  std::string route;
  std::string failed_condition;  // NotEquivalent
  std::optional<Valuation> witness;
  std::string reason;  // Unknown
  std::optional<Renaming> certificate_renaming;
  std::vector<Query> certificate_queries;

  bool equivalent() const { return outcome == Outcome::Equivalent; }
  bool not_equivalent() const { return outcome == Outcome::NotEquivalent; }
  bool unknown() const { return outcome == Outcome::Unknown; }
  bool definite() const { return outcome != Outcome::Unknown; }

  static EquivReport mk_equivalent(std::string route,
                                   std::optional<Renaming> renaming,
                                   std::vector<Query> queries);
  static EquivReport mk_not_equivalent(std::string route, std::string condition,
                                       std::optional<Valuation> witness);
  static EquivReport mk_unknown(std::string route, std::string reason);
};

/// Thm-style renaming characterization: requires s.delta = t and both sides
/// satisfiable; decides via delta(X) = Y and the constraint biconditional.
EquivReport equiv_by_renaming(const ECTerm& e1, const ECTerm& e2,
                              const Renaming& delta, SolverBackend& backend);

/// Identical-term-part special case (identity renaming).
EquivReport equiv_same_term(const ECTerm& e1, const ECTerm& e2,
                            SolverBackend& backend);

/// Characterization for satisfiable pattern-general terms: a deterministic
/// renaming from the position correspondence, then one biconditional.
EquivReport equiv_pattern_general(const ECTerm& e1, const ECTerm& e2,
                                  SolverBackend& backend);

/// PG-transform both sides, then the pattern-general characterization.
EquivReport equiv_via_pg(const ECTerm& e1, const ECTerm& e2,
                         SolverBackend& backend);

/// General characterization: checks the five conditions in order and
/// reports the first failure.
EquivReport equiv_general(const ECTerm& e1, const ECTerm& e2,
                          SolverBackend& backend);

enum class Method { Auto, General, Pg, Renaming };

/// Unsatisfiable cases first, then dispatch; `paranoid` cross-checks the
/// general route against the PG route.
EquivReport equiv_auto(const ECTerm& e1, const ECTerm& e2,
                       SolverBackend& backend, Method method = Method::Auto,
                       bool paranoid = false);

/// The deterministic renamed-variant witness, when one exists: the
/// positionwise variable pairing of s and t, provided it is a renaming
/// mapping s to t.
std::optional<Renaming> renaming_between(const Term& s, const Term& t);

}  // namespace ect
