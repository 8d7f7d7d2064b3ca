#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ect {

using Int = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SortError : Error {
  using Error::Error;
};
struct PositionError : Error {
  using Error::Error;
};
struct CaptureError : Error {
  using Error::Error;
};
struct EvalError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};

/// Well-formedness violation with a stable condition id (e.g. "bound-in-term").
struct IllFormed : Error {
  std::string condition;
  IllFormed(std::string cond, const std::string& msg)
      : Error(msg), condition(std::move(cond)) {}
};

enum class SortKind { Theory, Term };

struct Sort {
  std::string name;
  SortKind kind = SortKind::Term;

  bool operator==(const Sort& o) const { return name == o.name; }
  bool operator!=(const Sort& o) const { return !(*this == o); }
  bool operator<(const Sort& o) const { return name < o.name; }
  bool is_theory() const { return kind == SortKind::Theory; }
};

const Sort& sort_int();
const Sort& sort_bool();

struct Variable {
  std::string name;
  Sort sort;

  bool operator==(const Variable& o) const {
    return name == o.name && sort == o.sort;
  }
  bool operator!=(const Variable& o) const { return !(*this == o); }
  bool operator<(const Variable& o) const {
    if (name != o.name) return name < o.name;
    return sort < o.sort;
  }
};

using VariableSet = std::set<Variable>;

/// A theory constant denoting a model element: an integer literal or a
/// boolean constant.
class Value {
 public:
  Value(Int v) : v_(std::move(v)) {}
  Value(long v) : v_(Int(v)) {}
  Value(int v) : v_(Int(v)) {}
  Value(bool b) : v_(b) {}

  bool is_int() const { return std::holds_alternative<Int>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  const Int& as_int() const { return std::get<Int>(v_); }
  bool as_bool() const { return std::get<bool>(v_); }
  const Sort& sort() const { return is_int() ? sort_int() : sort_bool(); }

  std::string str() const;

  bool operator==(const Value& o) const { return v_ == o.v_; }
  bool operator!=(const Value& o) const { return !(*this == o); }
  bool operator<(const Value& o) const { return v_ < o.v_; }

 private:
  std::variant<Int, bool> v_;
};

enum class SymbolKind { Theory, Term };

struct FunctionSymbol {
  std::string name;
  std::vector<Sort> arg_sorts;
  Sort result_sort;
  SymbolKind kind = SymbolKind::Term;

  bool operator==(const FunctionSymbol& o) const {
    return name == o.name && arg_sorts == o.arg_sorts &&
           result_sort == o.result_sort && kind == o.kind;
  }
  bool is_theory() const { return kind == SymbolKind::Theory; }
};

/// Sorted signature split into theory and term symbols. The theory part
/// (integer/boolean operations) is fixed; `declare` adds term symbols.
/// Values (integer literals, true, false) are self-denoting and not stored.
class Signature {
 public:
  Signature();

  const FunctionSymbol& declare(const std::string& name,
                                std::vector<Sort> arg_sorts, Sort result_sort);
  const FunctionSymbol* find(const std::string& name) const;
  const FunctionSymbol& at(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }

  /// Theory symbol lookup by name and argument sorts (handles the
  /// Int/Bool overload of "=" and "!=").
  static const FunctionSymbol* theory_symbol(const std::string& name,
                                             std::span<const Sort> args);

  const std::map<std::string, FunctionSymbol>& term_symbols() const {
    return symbols_;
  }

 private:
  std::map<std::string, FunctionSymbol> symbols_;
};

/// First-order sorted term: variable, value, application, or (inside
/// multihole contexts only) a sorted hole.
class Term {
 public:
  enum class Kind { Variable, Value, Application, Hole };

  static Term var(Variable v);
  static Term val(Value v);
  static Term app(const FunctionSymbol& f, std::vector<Term> args);
  static Term hole(Sort sort, int index);

  Kind kind() const { return node_->kind; }
  const Sort& sort() const { return node_->sort; }
  bool is_var() const { return kind() == Kind::Variable; }
  bool is_value() const { return kind() == Kind::Value; }
  bool is_app() const { return kind() == Kind::Application; }
  bool is_hole() const { return kind() == Kind::Hole; }

  const Variable& variable() const;
  const Value& value() const;
  const FunctionSymbol& symbol() const;
  std::span<const Term> args() const;
  int hole_index() const;

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

  /// Total order for use as a map key (structural).
  bool less(const Term& o) const;

 private:
  struct Node {
    Kind kind;
    Sort sort;
    Variable var{"", Sort{}};
    std::optional<Value> val;
    FunctionSymbol sym;
    std::vector<Term> args;
    int hole_index = -1;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return a.less(b); }
};

/// Path of 1-based argument indices; the empty path is the root.
struct Position {
  std::vector<int> path;

  static Position root() { return Position{}; }
  Position child(int i) const {
    Position p = *this;
    p.path.push_back(i);
    return p;
  }
  bool is_root() const { return path.empty(); }
  size_t length() const { return path.size(); }

  bool operator==(const Position& o) const { return path == o.path; }
  bool operator!=(const Position& o) const { return !(*this == o); }
  /// Shorter-first, then index-wise; the order every position list uses.
  bool operator<(const Position& o) const {
    if (path.size() != o.path.size()) return path.size() < o.path.size();
    return path < o.path;
  }

  bool is_prefix_of(const Position& o) const;
  bool parallel_to(const Position& o) const {
    return !is_prefix_of(o) && !o.is_prefix_of(*this);
  }
};

std::vector<Position> positions(const Term& t);
std::vector<Position> positions_if(const Term& t,
                                   const std::function<bool(const Term&)>& p);
/// Positions whose symbol is in `vars`, optionally including value positions
/// (the Pos_{X+Val} / Pos_Val / Pos_{x} family).
std::vector<Position> positions_of(const Term& t, const VariableSet& vars,
                                   bool include_values);

const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& u);

VariableSet variables(const Term& t);
/// Variables in left-to-right first-occurrence order.
std::vector<Variable> variables_in_order(const Term& t);
bool contains_value(const Term& t);
std::set<Value> values_of(const Term& t);
bool contains_hole(const Term& t);

/// Sort-preserving finite map variable -> term; identity bindings are
/// dropped so the stored map is exactly the domain.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<Variable, Term>> bs);

  void set(const Variable& x, Term t);
  const Term* find(const Variable& x) const;
  VariableSet domain() const;
  bool empty() const { return bind_.empty(); }
  size_t size() const { return bind_.size(); }

  Term operator()(const Term& t) const;
  Term apply(const Term& t) const { return (*this)(t); }

  Substitution restricted(const VariableSet& u) const;
  /// Composition: apply(compose(s2, s1), t) == apply(s2, apply(s1, t)).
  static Substitution compose(const Substitution& after,
                              const Substitution& before);
  /// True if every variable in `xs` is mapped to a value.
  bool valued_on(const VariableSet& xs) const;

  const std::map<Variable, Term>& bindings() const { return bind_; }
  bool operator==(const Substitution& o) const { return bind_ == o.bind_; }

 private:
  std::map<Variable, Term> bind_;
};

/// Finite permutation of variables. Bindings are closed into cycles at
/// construction (an injective map a->b with b unmapped gets b->a added,
/// matching the bijective reading), so inverse() is always defined and
/// apply(inverse(), apply(*this, t)) == t.
class Renaming {
 public:
  Renaming() = default;
  Renaming(std::initializer_list<std::pair<Variable, Variable>> bs);

  static Renaming from_pairs(const std::vector<std::pair<Variable, Variable>>& bs);

  const Variable& operator()(const Variable& x) const;
  Term operator()(const Term& t) const;
  VariableSet image(const VariableSet& xs) const;
  Renaming inverse() const;
  Substitution as_substitution() const;

  bool empty() const { return map_.empty(); }
  const std::map<Variable, Variable>& bindings() const { return map_; }
  bool operator==(const Renaming& o) const { return map_ == o.map_; }

 private:
  void close();
  std::map<Variable, Variable> map_;
};

/// Syntactic matcher: a substitution sigma with Dom(sigma) within Var(pattern)\frozen and
/// sigma(pattern) == target, when one exists. Frozen variables match only
/// themselves.
std::optional<Substitution> match(const Term& pattern, const Term& target,
                                  const VariableSet& frozen = {});

/// Multihole context: a term with subterms at pairwise parallel positions
/// replaced by sorted holes (numbered left to right).
class Context {
 public:
  static Context make(const Term& t, std::vector<Position> ps);

  Term refill(std::span<const Term> fillers) const;
  const Term& skeleton() const { return skeleton_; }
  const std::vector<Position>& hole_positions() const { return holes_; }
  size_t hole_count() const { return holes_.size(); }

  Context renamed(const Renaming& r) const;
  bool operator==(const Context& o) const {
    return skeleton_ == o.skeleton_ && holes_ == o.holes_;
  }

 private:
  Context(Term skeleton, std::vector<Position> holes)
      : skeleton_(std::move(skeleton)), holes_(std::move(holes)) {}
  Term skeleton_;
  std::vector<Position> holes_;
};

Context multihole_context(const Term& t, std::vector<Position> ps);

}  // namespace ect
