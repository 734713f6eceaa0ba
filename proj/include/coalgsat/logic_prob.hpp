#pragma once

#include "coalgsat/onestep.hpp"
#include "coalgsat/realsolve.hpp"

namespace coalgsat {

// Polynomial system with one variable x_rho per constraint valuation: w(a) is
// replaced by the sum of x_rho over valuations making a true. Positive literals
// become p >= 0, negative ones p < 0; the simplex constraints are implicit.
PolySystem reduce_prob(const OneStepPair& pair);

}  // namespace coalgsat
