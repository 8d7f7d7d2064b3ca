#include "ect/printer.hpp"

#include <sstream>

namespace ect {

namespace {

// Higher binds tighter; mirrors the parser's precedence table.
int precedence(const std::string& op) {
  if (op == "<=>") return 20;
  if (op == "=>") return 30;
  if (op == "\\/") return 40;
  if (op == "/\\") return 50;
  if (op == "=" || op == "!=" || op == "<=" || op == "<" || op == ">=" ||
      op == ">")
    return 60;
  if (op == "+" || op == "-") return 70;
  if (op == "*" || op == "mod") return 80;
  return -1;
}

enum class Assoc { Left, Right, None };

Assoc assoc(const std::string& op) {
  if (op == "=>" || op == "<=>") return Assoc::Right;
  if (op == "=" || op == "!=" || op == "<=" || op == "<" || op == ">=" ||
      op == ">")
    return Assoc::None;
  return Assoc::Left;
}

void print(const Term& t, int parent_prec, bool right_operand,
           VariableSet* annotate, std::ostringstream& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      out << t.variable().name;
      if (annotate && annotate->erase(t.variable()))
        out << ":" << t.variable().sort.name;
      return;
    case Term::Kind::Value:
      out << t.value().str();
      return;
    case Term::Kind::Hole:
      out << "[]";
      return;
    case Term::Kind::Application:
      break;
  }
  const FunctionSymbol& f = t.symbol();
  if (f.name == "not") {
    bool paren = parent_prec > 90;
    if (paren) out << "(";
    out << "not ";
    print(t.args()[0], 90, false, annotate, out);
    if (paren) out << ")";
    return;
  }
  int prec = f.is_theory() ? precedence(f.name) : -1;
  if (prec < 0) {
    out << f.name;
    if (!t.args().empty()) {
      out << "(";
      for (size_t i = 0; i < t.args().size(); ++i) {
        if (i) out << ", ";
        print(t.args()[i], 0, false, annotate, out);
      }
      out << ")";
    }
    return;
  }
  Assoc a = assoc(f.name);
  bool paren = prec < parent_prec ||
               (prec == parent_prec &&
                (a == Assoc::None || (a == Assoc::Left) == right_operand));
  if (paren) out << "(";
  print(t.args()[0], prec, false, annotate, out);
  out << " " << f.name << " ";
  print(t.args()[1], prec, true, annotate, out);
  if (paren) out << ")";
}

}  // namespace

std::string print_term(const Term& t) {
  std::ostringstream out;
  print(t, 0, false, nullptr, out);
  return out.str();
}

std::string print_term_annotated(const Term& t, const VariableSet& annotate) {
  VariableSet pending = annotate;
  std::ostringstream out;
  print(t, 0, false, &pending, out);
  return out.str();
}

std::string print_position(const Position& p) {
  if (p.is_root()) return "e";
  std::ostringstream out;
  for (size_t i = 0; i < p.path.size(); ++i) {
    if (i) out << ".";
    out << p.path[i];
  }
  return out.str();
}

std::string print_substitution(const Substitution& s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [x, t] : s.bindings()) {
    if (!first) out << ", ";
    first = false;
    out << x.name << " -> " << print_term(t);
  }
  out << "}";
  return out.str();
}

std::string print_renaming(const Renaming& r) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [a, b] : r.bindings()) {
    if (!first) out << ", ";
    first = false;
    out << a.name << " -> " << b.name;
  }
  out << "}";
  return out.str();
}

}  // namespace ect
