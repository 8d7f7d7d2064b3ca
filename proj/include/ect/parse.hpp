#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ect/ecterm.hpp"

namespace ect {

struct ParseError : Error {
  int line;
  int col;
  ParseError(int l, int c, const std::string& msg)
      : Error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
        line(l),
        col(c) {}
};

struct ProblemItem {
  std::string name;
  bool classical = false;            // written as `s [phi]`, auto-embedded
  std::optional<Term> classical_phi; // original constraint of a classical item

  // Raw triple (also set when the item violates the ECTerm conditions).
  VariableSet logical;
  Term term;
  ExistentialConstraint constraint;

  std::optional<ECTerm> ecterm;       // set when well-formed
  std::optional<IllFormed> wf_error;  // violated condition otherwise

  ProblemItem(std::string n, VariableSet lv, Term t, ExistentialConstraint c)
      : name(std::move(n)),
        logical(std::move(lv)),
        term(std::move(t)),
        constraint(std::move(c)) {}
};

struct ProblemFile {
  std::shared_ptr<Signature> signature;
  std::vector<ProblemItem> items;

  const ProblemItem* find(const std::string& name) const;
};

ProblemFile parse_problem(const std::string& text);
std::string print_problem(const ProblemFile& f);
std::string print_item(const ProblemItem& it);

}  // namespace ect
