#pragma once

#include <vector>

#include "coalgsat/intsolve.hpp"
#include "coalgsat/onestep.hpp"

namespace coalgsat {

// Integer system with one variable x_rho per constraint valuation. Literals
// whose negation is not a single row (negated = and congruences) contribute a
// group of alternative rows; a solution must satisfy `base` and one row from
// every group.
struct PresburgerReduction {
  IntConstraintSystem base;
  std::vector<std::vector<IntRow>> alternatives;
};

PresburgerReduction reduce_presburger(const OneStepPair& pair);

}  // namespace coalgsat
