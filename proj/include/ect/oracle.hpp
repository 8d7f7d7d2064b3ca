#pragma once

#include "ect/ecterm.hpp"
#include "ect/model.hpp"

namespace ect {

struct OracleConfig {
  GridRange grid;
  /// Caller-asserted: the constraints confine all relevant variables to the
  /// grid, making the enumeration exhaustive.
  bool exact_confinement = false;
};

/// Brute-force instance-set inclusion: every grid instance of e1 must be an
/// instance of e2. Exact under confinement; otherwise Fails is definitive
/// (within the grid reading) and Holds degrades to Unknown.
Verdict oracle_subsumes(const ECTerm& e1, const ECTerm& e2,
                        const OracleConfig& cfg);

/// Both subsumption directions.
Verdict oracle_equiv(const ECTerm& e1, const ECTerm& e2,
                     const OracleConfig& cfg);

/// Worst-case enumeration size grid^|X| * grid^|Y|; the CLI warns above 1e7.
double oracle_combination_estimate(const ECTerm& e1, const ECTerm& e2,
                                   const OracleConfig& cfg);

}  // namespace ect
