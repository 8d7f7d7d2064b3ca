#include "ect/term.hpp"

#include <algorithm>
#include <sstream>

namespace ect {

const Sort& sort_int() {
  static const Sort s{"Int", SortKind::Theory};
  return s;
}

const Sort& sort_bool() {
  static const Sort s{"Bool", SortKind::Theory};
  return s;
}

std::string Value::str() const {
  if (is_bool()) return as_bool() ? "true" : "false";
  return as_int().str();
}

namespace {

std::vector<FunctionSymbol> make_theory_symbols() {
  const Sort& I = sort_int();
  const Sort& B = sort_bool();
  std::vector<FunctionSymbol> v;
  auto add = [&](const std::string& n, std::vector<Sort> a, Sort r) {
    v.push_back(FunctionSymbol{n, std::move(a), std::move(r), SymbolKind::Theory});
  };
  add("+", {I, I}, I);
  add("-", {I, I}, I);
  add("*", {I, I}, I);
  add("mod", {I, I}, I);
  add("=", {I, I}, B);
  add("=", {B, B}, B);
  add("!=", {I, I}, B);
  add("!=", {B, B}, B);
  add("<=", {I, I}, B);
  add("<", {I, I}, B);
  add(">=", {I, I}, B);
  add(">", {I, I}, B);
  add("/\\", {B, B}, B);
  add("\\/", {B, B}, B);
  add("not", {B}, B);
  add("=>", {B, B}, B);
  add("<=>", {B, B}, B);
  return v;
}

const std::vector<FunctionSymbol>& theory_symbols() {
  static const std::vector<FunctionSymbol> syms = make_theory_symbols();
  return syms;
}

}  // namespace

Signature::Signature() = default;

const FunctionSymbol& Signature::declare(const std::string& name,
                                         std::vector<Sort> arg_sorts,
                                         Sort result_sort) {
  if (Signature::theory_symbol(name, arg_sorts) != nullptr ||
      name == "mod" || name == "not" || name == "true" || name == "false") {
    throw SortError("cannot redeclare theory symbol '" + name + "'");
  }
  auto [it, inserted] = symbols_.emplace(
      name, FunctionSymbol{name, std::move(arg_sorts), std::move(result_sort),
                           SymbolKind::Term});
  if (!inserted) throw SortError("duplicate declaration of '" + name + "'");
  return it->second;
}

const FunctionSymbol* Signature::find(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

const FunctionSymbol& Signature::at(const std::string& name) const {
  const FunctionSymbol* f = find(name);
  if (!f) throw SortError("undeclared symbol '" + name + "'");
  return *f;
}

const FunctionSymbol* Signature::theory_symbol(const std::string& name,
                                               std::span<const Sort> args) {
  for (const FunctionSymbol& f : theory_symbols()) {
    if (f.name != name || f.arg_sorts.size() != args.size()) continue;
    if (std::equal(f.arg_sorts.begin(), f.arg_sorts.end(), args.begin()))
      return &f;
  }
  return nullptr;
}

Term Term::var(Variable v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->sort = v.sort;
  n->var = std::move(v);
  return Term(std::move(n));
}

Term Term::val(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Value;
  n->sort = v.sort();
  n->val = std::move(v);
  return Term(std::move(n));
}

Term Term::app(const FunctionSymbol& f, std::vector<Term> args) {
  if (args.size() != f.arg_sorts.size())
    throw SortError("arity mismatch for '" + f.name + "': expected " +
                    std::to_string(f.arg_sorts.size()) + " arguments, got " +
                    std::to_string(args.size()));
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i].sort() != f.arg_sorts[i])
      throw SortError("argument " + std::to_string(i + 1) + " of '" + f.name +
                      "' has sort " + args[i].sort().name + ", expected " +
                      f.arg_sorts[i].name);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Application;
  n->sort = f.result_sort;
  n->sym = f;
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::hole(Sort sort, int index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Hole;
  n->sort = std::move(sort);
  n->hole_index = index;
  return Term(std::move(n));
}

const Variable& Term::variable() const {
  if (!is_var()) throw Error("term is not a variable");
  return node_->var;
}

const Value& Term::value() const {
  if (!is_value()) throw Error("term is not a value");
  return *node_->val;
}

const FunctionSymbol& Term::symbol() const {
  if (!is_app()) throw Error("term is not an application");
  return node_->sym;
}

std::span<const Term> Term::args() const {
  if (!is_app()) return {};
  return node_->args;
}

int Term::hole_index() const {
  if (!is_hole()) throw Error("term is not a hole");
  return node_->hole_index;
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind() || sort() != o.sort()) return false;
  switch (kind()) {
    case Kind::Variable:
      return node_->var == o.node_->var;
    case Kind::Value:
      return *node_->val == *o.node_->val;
    case Kind::Hole:
      return node_->hole_index == o.node_->hole_index;
    case Kind::Application: {
      if (!(node_->sym == o.node_->sym)) return false;
      if (node_->args.size() != o.node_->args.size()) return false;
      for (size_t i = 0; i < node_->args.size(); ++i)
        if (node_->args[i] != o.node_->args[i]) return false;
      return true;
    }
  }
  return false;
}

bool Term::less(const Term& o) const {
  if (node_ == o.node_) return false;
  if (kind() != o.kind()) return static_cast<int>(kind()) < static_cast<int>(o.kind());
  switch (kind()) {
    case Kind::Variable:
      return node_->var < o.node_->var;
    case Kind::Value:
      return *node_->val < *o.node_->val;
    case Kind::Hole:
      return node_->hole_index < o.node_->hole_index;
    case Kind::Application: {
      if (node_->sym.name != o.node_->sym.name)
        return node_->sym.name < o.node_->sym.name;
      if (node_->args.size() != o.node_->args.size())
        return node_->args.size() < o.node_->args.size();
      for (size_t i = 0; i < node_->args.size(); ++i) {
        if (node_->args[i] != o.node_->args[i])
          return node_->args[i].less(o.node_->args[i]);
      }
      return false;
    }
  }
  return false;
}

bool Position::is_prefix_of(const Position& o) const {
  if (path.size() > o.path.size()) return false;
  return std::equal(path.begin(), path.end(), o.path.begin());
}

namespace {

void collect_positions(const Term& t, Position& here,
                       const std::function<bool(const Term&)>& pred,
                       std::vector<Position>& out) {
  if (pred(t)) out.push_back(here);
  if (t.is_app()) {
    int i = 1;
    for (const Term& a : t.args()) {
      here.path.push_back(i++);
      collect_positions(a, here, pred, out);
      here.path.pop_back();
    }
  }
}

}  // namespace

std::vector<Position> positions_if(const Term& t,
                                   const std::function<bool(const Term&)>& p) {
  std::vector<Position> out;
  Position here;
  collect_positions(t, here, p, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Position> positions(const Term& t) {
  return positions_if(t, [](const Term&) { return true; });
}

std::vector<Position> positions_of(const Term& t, const VariableSet& vars,
                                   bool include_values) {
  return positions_if(t, [&](const Term& s) {
    if (s.is_var()) return vars.count(s.variable()) > 0;
    if (s.is_value()) return include_values;
    return false;
  });
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int i : p.path) {
    if (!cur->is_app() || i < 1 || static_cast<size_t>(i) > cur->args().size())
      throw PositionError("position is not valid in the term");
    cur = &cur->args()[i - 1];
  }
  return *cur;
}

Term replace_at(const Term& t, const Position& p, const Term& u) {
  if (p.is_root()) {
    if (u.sort() != t.sort())
      throw SortError("replacement sort " + u.sort().name +
                      " differs from subterm sort " + t.sort().name);
    return u;
  }
  if (!t.is_app() || p.path.front() < 1 ||
      static_cast<size_t>(p.path.front()) > t.args().size())
    throw PositionError("position is not valid in the term");
  int i = p.path.front();
  Position rest;
  rest.path.assign(p.path.begin() + 1, p.path.end());
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[i - 1] = replace_at(args[i - 1], rest, u);
  return Term::app(t.symbol(), std::move(args));
}

namespace {
void collect_vars(const Term& t, std::vector<Variable>& order,
                  VariableSet& seen) {
  if (t.is_var()) {
    if (seen.insert(t.variable()).second) order.push_back(t.variable());
  } else if (t.is_app()) {
    for (const Term& a : t.args()) collect_vars(a, order, seen);
  }
}
}  // namespace

VariableSet variables(const Term& t) {
  std::vector<Variable> order;
  VariableSet seen;
  collect_vars(t, order, seen);
  return seen;
}

std::vector<Variable> variables_in_order(const Term& t) {
  std::vector<Variable> order;
  VariableSet seen;
  collect_vars(t, order, seen);
  return order;
}

bool contains_value(const Term& t) {
  if (t.is_value()) return true;
  if (!t.is_app()) return false;
  for (const Term& a : t.args())
    if (contains_value(a)) return true;
  return false;
}

std::set<Value> values_of(const Term& t) {
  std::set<Value> out;
  std::function<void(const Term&)> go = [&](const Term& s) {
    if (s.is_value()) out.insert(s.value());
    if (s.is_app())
      for (const Term& a : s.args()) go(a);
  };
  go(t);
  return out;
}

bool contains_hole(const Term& t) {
  if (t.is_hole()) return true;
  if (!t.is_app()) return false;
  for (const Term& a : t.args())
    if (contains_hole(a)) return true;
  return false;
}

Substitution::Substitution(
    std::initializer_list<std::pair<Variable, Term>> bs) {
  for (const auto& [x, t] : bs) set(x, t);
}

void Substitution::set(const Variable& x, Term t) {
  if (t.sort() != x.sort)
    throw SortError("binding for " + x.name + " has sort " + t.sort().name +
                    ", expected " + x.sort.name);
  if (t.is_var() && t.variable() == x) {
    bind_.erase(x);
    return;
  }
  bind_.insert_or_assign(x, std::move(t));
}

const Term* Substitution::find(const Variable& x) const {
  auto it = bind_.find(x);
  return it == bind_.end() ? nullptr : &it->second;
}

VariableSet Substitution::domain() const {
  VariableSet d;
  for (const auto& [x, _] : bind_) d.insert(x);
  return d;
}

Term Substitution::operator()(const Term& t) const {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      const Term* b = find(t.variable());
      return b ? *b : t;
    }
    case Term::Kind::Value:
    case Term::Kind::Hole:
      return t;
    case Term::Kind::Application: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back((*this)(a));
      return Term::app(t.symbol(), std::move(args));
    }
  }
  throw Error("unreachable");
}

Substitution Substitution::restricted(const VariableSet& u) const {
  Substitution out;
  for (const auto& [x, t] : bind_)
    if (u.count(x)) out.set(x, t);
  return out;
}

Substitution Substitution::compose(const Substitution& after,
                                   const Substitution& before) {
  Substitution out;
  for (const auto& [x, t] : before.bind_) out.set(x, after(t));
  for (const auto& [x, t] : after.bind_)
    if (!before.find(x)) out.set(x, t);
  return out;
}

bool Substitution::valued_on(const VariableSet& xs) const {
  for (const Variable& x : xs) {
    const Term* t = find(x);
    if (!t || !t->is_value()) return false;
  }
  return true;
}

Renaming::Renaming(std::initializer_list<std::pair<Variable, Variable>> bs) {
  for (const auto& [a, b] : bs) {
    if (a.sort != b.sort)
      throw SortError("renaming " + a.name + " -> " + b.name +
                      " is not sort-preserving");
    if (a == b) continue;
    auto [it, inserted] = map_.emplace(a, b);
    if (!inserted && !(it->second == b))
      throw Error("renaming maps " + a.name + " twice");
  }
  close();
}

Renaming Renaming::from_pairs(
    const std::vector<std::pair<Variable, Variable>>& bs) {
  Renaming r;
  for (const auto& [a, b] : bs) {
    if (a.sort != b.sort)
      throw SortError("renaming " + a.name + " -> " + b.name +
                      " is not sort-preserving");
    if (a == b) continue;
    auto [it, inserted] = r.map_.emplace(a, b);
    if (!inserted && !(it->second == b))
      throw Error("renaming maps " + a.name + " twice");
  }
  r.close();
  return r;
}

void Renaming::close() {
  std::map<Variable, Variable> reverse;
  for (const auto& [a, b] : map_) {
    auto [it, inserted] = reverse.emplace(b, a);
    if (!inserted) throw Error("renaming is not injective at " + b.name);
  }
  // Close the injection into a permutation: unmapped range variables are
  // sent back onto unhit domain variables of the same sort, name order.
  std::vector<Variable> need;  // in range, not in domain
  std::vector<Variable> free;  // in domain, not in range
  for (const auto& [b, _] : reverse)
    if (!map_.count(b)) need.push_back(b);
  for (const auto& [a, _] : map_)
    if (!reverse.count(a)) free.push_back(a);
  for (const Variable& b : need) {
    bool placed = false;
    for (auto it = free.begin(); it != free.end(); ++it) {
      if (it->sort == b.sort) {
        map_.emplace(b, *it);
        free.erase(it);
        placed = true;
        break;
      }
    }
    if (!placed) throw Error("renaming cannot be closed into a permutation");
  }
}

const Variable& Renaming::operator()(const Variable& x) const {
  auto it = map_.find(x);
  return it == map_.end() ? x : it->second;
}

Term Renaming::operator()(const Term& t) const {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return Term::var((*this)(t.variable()));
    case Term::Kind::Value:
    case Term::Kind::Hole:
      return t;
    case Term::Kind::Application: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back((*this)(a));
      return Term::app(t.symbol(), std::move(args));
    }
  }
  throw Error("unreachable");
}

VariableSet Renaming::image(const VariableSet& xs) const {
  VariableSet out;
  for (const Variable& x : xs) out.insert((*this)(x));
  return out;
}

Renaming Renaming::inverse() const {
  Renaming r;
  for (const auto& [a, b] : map_) r.map_.emplace(b, a);
  return r;
}

Substitution Renaming::as_substitution() const {
  Substitution s;
  for (const auto& [a, b] : map_) s.set(a, Term::var(b));
  return s;
}

namespace {

bool match_into(const Term& pattern, const Term& target,
                const VariableSet& frozen, Substitution& out) {
  if (pattern.is_var() && !frozen.count(pattern.variable())) {
    const Variable& x = pattern.variable();
    if (target.sort() != x.sort) return false;
    if (const Term* bound = out.find(x)) return *bound == target;
    if (target.is_var() && target.variable() == x) return true;  // identity
    out.set(x, target);
    return true;
  }
  if (pattern.is_var() || pattern.is_value() || pattern.is_hole())
    return pattern == target;
  if (!target.is_app() || !(pattern.symbol() == target.symbol())) return false;
  for (size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_into(pattern.args()[i], target.args()[i], frozen, out))
      return false;
  return true;
}

}  // namespace

std::optional<Substitution> match(const Term& pattern, const Term& target,
                                  const VariableSet& frozen) {
  Substitution out;
  if (!match_into(pattern, target, frozen, out)) return std::nullopt;
  return out;
}

Context Context::make(const Term& t, std::vector<Position> ps) {
  std::sort(ps.begin(), ps.end());
  for (size_t i = 0; i < ps.size(); ++i) {
    for (size_t j = i + 1; j < ps.size(); ++j) {
      if (ps[i] == ps[j] || !ps[i].parallel_to(ps[j]))
        throw PositionError("context positions overlap");
    }
  }
  Term skel = t;
  int index = 0;
  for (const Position& p : ps) {
    const Term& sub = subterm_at(skel, p);
    skel = replace_at(skel, p, Term::hole(sub.sort(), index++));
  }
  return Context(std::move(skel), std::move(ps));
}

Context multihole_context(const Term& t, std::vector<Position> ps) {
  return Context::make(t, std::move(ps));
}

Term Context::refill(std::span<const Term> fillers) const {
  if (fillers.size() != holes_.size())
    throw PositionError("refill expects " + std::to_string(holes_.size()) +
                        " terms, got " + std::to_string(fillers.size()));
  Term out = skeleton_;
  for (size_t i = 0; i < holes_.size(); ++i) {
    const Term& h = subterm_at(out, holes_[i]);
    if (!h.is_hole()) throw PositionError("context skeleton is corrupted");
    if (fillers[i].sort() != h.sort())
      throw SortError("filler " + std::to_string(i + 1) + " has sort " +
                      fillers[i].sort().name + ", hole expects " +
                      h.sort().name);
    out = replace_at(out, holes_[i], fillers[i]);
  }
  return out;
}

Context Context::renamed(const Renaming& r) const {
  return Context(r(skeleton_), holes_);
}

}  // namespace ect
