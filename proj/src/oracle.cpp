#include "ect/oracle.hpp"

#include <cmath>
#include <unordered_set>

#include "ect/printer.hpp"

namespace ect {

namespace {

Substitution valuation_to_subst(const Valuation& rho,
                                const VariableSet& domain) {
  Substitution out;
  for (const Variable& x : domain) out.set(x, Term::val(rho(x)));
  return out;
}

/// Is u an instance t.gamma for a Y-valued gamma respecting e2's constraint?
/// The unique syntactic matcher determines gamma on Var(t); Y-positions must
/// carry matched values and the constraint body is then checked by grid
/// enumeration of e2's bound variables.
bool covered_by(const Term& u, const ECTerm& e2, const GridRange& grid) {
  std::optional<Substitution> m = match(e2.term(), u);
  if (!m) return false;
  Valuation rho;
  for (const Variable& y : e2.logical_vars()) {
    const Term* b = m->find(y);
    if (!b || !b->is_value()) return false;  // y left as a variable: not valued
    rho.set(y, b->value());
  }
  return eval_existential(e2.constraint(), rho, grid);
}

}  // namespace

Verdict oracle_subsumes(const ECTerm& e1, const ECTerm& e2,
                        const OracleConfig& cfg) {
  // Enumerating only substitutions with Dom(sigma) = X is complete: an
  // arbitrary X-valued sigma agrees with one of these on X, and its extra
  // action on Var(s)\X transports any covering instantiation along with it
  // (values stay values, the constraint bodies are unaffected). A failing
  // enumerated sigma is itself an X-valued counterexample.
  std::vector<Variable> xs(e1.logical_vars().begin(), e1.logical_vars().end());
  bool any_respecting = false;
  std::optional<Valuation> failing;
  std::string fail_note;
  std::unordered_set<std::string> seen;

  for_each_valuation(xs, cfg.grid, Valuation(), [&](const Valuation& rho) {
    if (!eval_existential(e1.constraint(), rho, cfg.grid)) return false;
    any_respecting = true;
    Substitution sigma = valuation_to_subst(rho, e1.logical_vars());
    Term u = sigma(e1.term());
    if (!seen.insert(print_term(u)).second) return false;  // duplicate instance
    if (!covered_by(u, e2, cfg.grid)) {
      Valuation w;
      for (const Variable& x : xs) w.set(x, rho(x));
      failing = std::move(w);
      fail_note = "instance " + print_term(u) + " is not covered";
      return true;
    }
    return false;
  });

  if (failing) return Verdict::fails(std::move(failing), fail_note);
  if (!any_respecting && !cfg.exact_confinement)
    return Verdict::unknown(
        "constraint unsatisfiable within the grid; grid may be too small");
  if (cfg.exact_confinement) return Verdict::holds();
  return Verdict::unknown("all grid instances covered; not definitive without "
                          "grid confinement");
}

Verdict oracle_equiv(const ECTerm& e1, const ECTerm& e2,
                     const OracleConfig& cfg) {
  Verdict fwd = oracle_subsumes(e1, e2, cfg);
  if (fwd.is_fails()) {
    fwd.reason = "left-to-right subsumption fails: " + fwd.reason;
    return fwd;
  }
  Verdict bwd = oracle_subsumes(e2, e1, cfg);
  if (bwd.is_fails()) {
    bwd.reason = "right-to-left subsumption fails: " + bwd.reason;
    return bwd;
  }
  if (fwd.is_holds() && bwd.is_holds()) return Verdict::holds();
  return Verdict::unknown(fwd.is_unknown() ? fwd.reason : bwd.reason);
}

double oracle_combination_estimate(const ECTerm& e1, const ECTerm& e2,
                                   const OracleConfig& cfg) {
  double g = cfg.grid.size().convert_to<double>();
  return std::pow(g, static_cast<double>(e1.logical_vars().size())) *
         std::pow(g, static_cast<double>(e2.logical_vars().size()));
}

}  // namespace ect
