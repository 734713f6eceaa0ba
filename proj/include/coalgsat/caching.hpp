#pragma once

#include <cstddef>
#include <functional>

#include "coalgsat/decision.hpp"
#include "coalgsat/sequent.hpp"

namespace coalgsat {

struct CachingOptions {
  PolyBudget budget;
  // Children added per expansion of a state (non-states get all of theirs).
  std::size_t batch = 64;
  // Propagate after every `propagate_every` expansions; 0 disables the
  // intermediate propagation so that only the final step runs.
  std::size_t propagate_every = 1;
  std::size_t child_cap = kDefaultChildCap;
  // Re-derive E and A from scratch after each propagation and compare.
  bool check_invariants = false;
  bool extract = true;
};

// Global caching: expand the sequent graph from {phi0, psi} in FIFO order and
// propagate E = nu S. E_G(S u E), A = mu S. A_G(S u A).
Decision decide_caching(const Formula& psi, const Formula& phi0, Logic logic, const CachingOptions& opt = {});

}  // namespace coalgsat
