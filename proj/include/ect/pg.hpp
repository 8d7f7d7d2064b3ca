#pragma once

#include <vector>

#include "ect/ecterm.hpp"

namespace ect {

struct PGResult {
  ECTerm result;
  std::vector<Position> hole_positions;  // Pos_{X+Val}(s), shortlex
  std::vector<Variable> fresh_vars;      // w1..wn, positionwise
  Substitution back_substitution;        // { wi -> s|_{pi} }
};

/// True iff every logical variable occurs at most once in the term part and
/// the term part contains no value.
bool is_pattern_general(const ECTerm& e);

/// Pulls all logical-variable and value positions out into fresh variables,
/// recording them as equations in the constraint. The result is
/// pattern-general and equivalent to the input.
PGResult pg_transform(const ECTerm& e);

/// Validity of (E x.phi) <=> (E y.psi)sigma for the back substitution; holds
/// for every satisfiable input. Exposed as a self-test hook.
Verdict back_validity_check(const ECTerm& e, const PGResult& r,
                            SolverBackend& backend);

}  // namespace ect
