#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ect/constraint.hpp"
#include "ect/term.hpp"

namespace ect {

/// Inclusive integer range used by the bounded evaluator and the oracle.
struct GridRange {
  Int lo = -8;
  Int hi = 8;

  GridRange() = default;
  GridRange(Int l, Int h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw Error("grid range has lo > hi");
  }
  Int size() const { return hi - lo + 1; }
};

/// Total assignment of theory-sorted variables to model elements, realized
/// as a finite map with a per-sort default (0, false).
class Valuation {
 public:
  Valuation() = default;

  void set(const Variable& x, Value v);
  Value operator()(const Variable& x) const;
  bool defines(const Variable& x) const { return m_.count(x) > 0; }

  const std::map<Variable, Value>& defined() const { return m_; }
  bool operator==(const Valuation& o) const { return m_ == o.m_; }

 private:
  std::map<Variable, Value> m_;
};

std::string print_valuation(const Valuation& v);

/// Standard bottom-up interpretation of a theory term. `mod` follows the
/// SMT-LIB convention (nonnegative remainder; mod by zero is identity).
Value eval(const Term& t, const Valuation& rho);
bool eval_formula(const Term& t, const Valuation& rho);

/// Truth of an existential constraint under rho: some grid assignment of
/// the bound sequence satisfies the body. Exact only when the body confines
/// the bound variables to the grid; otherwise a bounded approximation.
bool eval_existential(const ExistentialConstraint& c, const Valuation& rho,
                      const GridRange& grid);

/// Runs fn on every grid assignment of `vars` (Int over the range, Bool over
/// {false,true}), in ascending order, starting from `base`. Stops early and
/// returns true when fn returns true.
bool for_each_valuation(const std::vector<Variable>& vars,
                        const GridRange& grid, const Valuation& base,
                        const std::function<bool(const Valuation&)>& fn);

}  // namespace ect
