#pragma once

#include <string>

#include "ect/term.hpp"

namespace ect {

/// Canonical ASCII rendering with minimal parentheses; the inverse of the
/// problem-file grammar.
std::string print_term(const Term& t);
/// Same, with `x:Sort` annotations at the first occurrence of each variable
/// in `annotate` (used where sort inference would otherwise default).
std::string print_term_annotated(const Term& t, const VariableSet& annotate);
std::string print_position(const Position& p);
std::string print_substitution(const Substitution& s);
std::string print_renaming(const Renaming& r);

}  // namespace ect
