#include "ect/model.hpp"

#include <sstream>

namespace ect {

void Valuation::set(const Variable& x, Value v) {
  if (v.sort() != x.sort)
    throw SortError("valuation assigns " + v.str() + " to " + x.name + " : " +
                    x.sort.name);
  m_.insert_or_assign(x, std::move(v));
}

Value Valuation::operator()(const Variable& x) const {
  auto it = m_.find(x);
  if (it != m_.end()) return it->second;
  if (x.sort == sort_bool()) return Value(false);
  if (x.sort == sort_int()) return Value(Int(0));
  throw EvalError("valuation queried on non-theory variable " + x.name);
}

std::string print_valuation(const Valuation& v) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [x, val] : v.defined()) {
    if (!first) out << ", ";
    first = false;
    out << x.name << " = " << val.str();
  }
  out << "}";
  return out.str();
}

namespace {

// SMT-LIB integer mod: remainder in [0, |d|); total, with mod-by-zero
// yielding the dividend (z3's completion).
Int smt_mod(const Int& a, const Int& d) {
  if (d == 0) return a;
  Int r = a % d;
  if (r < 0) r += abs(d);
  return r;
}

}  // namespace

Value eval(const Term& t, const Valuation& rho) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (!t.variable().sort.is_theory())
        throw EvalError("cannot evaluate non-theory variable " +
                        t.variable().name);
      return rho(t.variable());
    case Term::Kind::Value:
      return t.value();
    case Term::Kind::Hole:
      throw EvalError("cannot evaluate a context hole");
    case Term::Kind::Application:
      break;
  }
  const FunctionSymbol& f = t.symbol();
  if (!f.is_theory())
    throw EvalError("non-theory symbol '" + f.name + "' in evaluation");
  auto a = [&](size_t i) { return eval(t.args()[i], rho); };
  const std::string& op = f.name;
  if (op == "+") return Value(a(0).as_int() + a(1).as_int());
  if (op == "-") return Value(a(0).as_int() - a(1).as_int());
  if (op == "*") return Value(a(0).as_int() * a(1).as_int());
  if (op == "mod") return Value(smt_mod(a(0).as_int(), a(1).as_int()));
  if (op == "=") return Value(a(0) == a(1));
  if (op == "!=") return Value(!(a(0) == a(1)));
  if (op == "<=") return Value(a(0).as_int() <= a(1).as_int());
  if (op == "<") return Value(a(0).as_int() < a(1).as_int());
  if (op == ">=") return Value(a(0).as_int() >= a(1).as_int());
  if (op == ">") return Value(a(0).as_int() > a(1).as_int());
  if (op == "/\\") return Value(a(0).as_bool() && a(1).as_bool());
  if (op == "\\/") return Value(a(0).as_bool() || a(1).as_bool());
  if (op == "not") return Value(!a(0).as_bool());
  if (op == "=>") return Value(!a(0).as_bool() || a(1).as_bool());
  if (op == "<=>") return Value(a(0).as_bool() == a(1).as_bool());
  throw EvalError("no interpretation for theory symbol '" + op + "'");
}

bool eval_formula(const Term& t, const Valuation& rho) {
  Value v = eval(t, rho);
  if (!v.is_bool()) throw EvalError("formula does not evaluate to Bool");
  return v.as_bool();
}

bool for_each_valuation(const std::vector<Variable>& vars,
                        const GridRange& grid, const Valuation& base,
                        const std::function<bool(const Valuation&)>& fn) {
  Valuation rho = base;
  std::function<bool(size_t)> go = [&](size_t i) -> bool {
    if (i == vars.size()) return fn(rho);
    const Variable& x = vars[i];
    if (x.sort == sort_bool()) {
      for (bool b : {false, true}) {
        rho.set(x, Value(b));
        if (go(i + 1)) return true;
      }
      return false;
    }
    for (Int v = grid.lo; v <= grid.hi; ++v) {
      rho.set(x, Value(v));
      if (go(i + 1)) return true;
    }
    return false;
  };
  return go(0);
}

bool eval_existential(const ExistentialConstraint& c, const Valuation& rho,
                      const GridRange& grid) {
  return for_each_valuation(
      c.bound_seq(), grid, rho,
      [&](const Valuation& full) { return eval_formula(c.body().term(), full); });
}

}  // namespace ect
