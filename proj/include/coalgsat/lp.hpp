#pragma once

#include <cstddef>
#include <vector>

#include "coalgsat/numeric.hpp"

namespace coalgsat {

enum class RowRel { Le, Ge, Eq, Lt, Gt };

// coeffs . x REL rhs
struct LinRow {
  std::vector<Rat> coeffs;
  RowRel rel;
  Rat rhs;
};

enum class LpStatus { Infeasible, Optimal, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rat> x;
  Rat value;
};

// Maximizes objective . x over x >= 0 subject to non-strict rows (Le, Ge, Eq),
// using a dense two-phase simplex over exact rationals with Bland's rule.
LpSolution lp_maximize(std::size_t num_vars, const std::vector<LinRow>& rows, const std::vector<Rat>& objective);

// Feasibility over x >= 0 with strict rows allowed. Strict rows get a shared
// slack epsilon that is maximized (capped at 1); the system is feasible iff the
// optimum is positive, and the returned point satisfies strict rows strictly.
struct LinFeasibility {
  bool feasible = false;
  std::vector<Rat> point;
};
LinFeasibility lp_feasible(std::size_t num_vars, const std::vector<LinRow>& rows);

// Exact evaluation of a row at a point.
bool row_holds(const LinRow& row, const std::vector<Rat>& x);

}  // namespace coalgsat
