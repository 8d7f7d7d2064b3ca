#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ect/constraint.hpp"
#include "ect/model.hpp"

namespace ect {

/// Three-valued outcome of a solver-dependent decision.
struct Verdict {
  enum class Kind { Holds, Fails, Unknown };

  Kind kind = Kind::Unknown;
  std::optional<Valuation> witness;  // counterexample / failing instance
  std::string reason;

  static Verdict holds() { return {Kind::Holds, std::nullopt, ""}; }
  static Verdict fails(std::optional<Valuation> w = std::nullopt,
                       std::string why = "") {
    return {Kind::Fails, std::move(w), std::move(why)};
  }
  static Verdict unknown(std::string why) {
    return {Kind::Unknown, std::nullopt, std::move(why)};
  }

  bool is_holds() const { return kind == Kind::Holds; }
  bool is_fails() const { return kind == Kind::Fails; }
  bool is_unknown() const { return kind == Kind::Unknown; }
  bool definite() const { return kind != Kind::Unknown; }
};

/// Boolean combination of existential constraints (free variables are
/// implicitly universally closed for validity checks).
class QueryFormula {
 public:
  enum class Kind { Leaf, Not, And, Implies, Iff };

  static QueryFormula leaf(ExistentialConstraint c);
  static QueryFormula leaf(LogicalConstraint c);
  static QueryFormula negation(QueryFormula f);
  static QueryFormula conj(QueryFormula a, QueryFormula b);
  static QueryFormula implies(QueryFormula a, QueryFormula b);
  static QueryFormula iff(QueryFormula a, QueryFormula b);

  Kind kind() const { return node_->kind; }
  const ExistentialConstraint& constraint() const;
  const QueryFormula& lhs() const { return node_->kids[0]; }
  const QueryFormula& rhs() const { return node_->kids[1]; }

  VariableSet free_variables() const;
  std::vector<const ExistentialConstraint*> leaves() const;
  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::optional<ExistentialConstraint> c;
    std::vector<QueryFormula> kids;
  };
  explicit QueryFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Query {
  enum class Kind { Validity, Satisfiability };
  Kind kind;
  QueryFormula formula;

  static Query validity(QueryFormula f) { return {Kind::Validity, std::move(f)}; }
  std::string to_string() const;
};

struct ModelResult {
  std::optional<Valuation> model;  // over the free variables
  bool definitive_no = false;      // unsat for sure (no model exists at all)
  std::string note;
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;

  /// Holds iff the universal closure of the formula is true in the model.
  virtual Verdict check_valid(const Query& q) = 0;
  /// A valuation of the free variables satisfying the constraint, if any.
  virtual ModelResult find_model(const ExistentialConstraint& c) = 0;
  virtual std::string name() const = 0;

  Verdict check_sat(const ExistentialConstraint& c);
};

Verdict check_valid(const Query& q, SolverBackend& backend);
Verdict check_sat(const ExistentialConstraint& c, SolverBackend& backend);

/// Bounded enumeration backend. Counterexamples are found within the grid;
/// affirmative answers are exact only under the caller-asserted confinement
/// flag and degrade to Unknown otherwise.
class GridBackend : public SolverBackend {
 public:
  explicit GridBackend(GridRange range, bool exact_confinement = false)
      : range_(std::move(range)), exact_(exact_confinement) {}

  Verdict check_valid(const Query& q) override;
  ModelResult find_model(const ExistentialConstraint& c) override;
  std::string name() const override;

  const GridRange& range() const { return range_; }
  bool exact() const { return exact_; }

 private:
  GridRange range_;
  bool exact_;
};

/// External SMT-LIB2 solver run as a child process per query. The command
/// (e.g. "z3 -in") receives one script on stdin and must answer with
/// sat/unsat/unknown; counterexamples are read back via (get-model).
class SmtBackend : public SolverBackend {
 public:
  explicit SmtBackend(std::string command) : command_(std::move(command)) {}

  Verdict check_valid(const Query& q) override;
  ModelResult find_model(const ExistentialConstraint& c) override;
  std::string name() const override;

  /// The exact script emitted for a query; exposed for the wire-format tests.
  std::string script_for(const Query& q) const;

 private:
  std::string command_;
};

/// Solver command from the environment (ECT_SOLVER) or a well-known solver
/// found on PATH; empty if none.
std::string default_solver_command();

std::string to_smtlib(const Term& t);

}  // namespace ect
