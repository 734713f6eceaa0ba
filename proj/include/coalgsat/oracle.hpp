#pragma once

#include <cstddef>
#include <optional>

#include "coalgsat/formula.hpp"
#include "coalgsat/logic.hpp"
#include "coalgsat/model.hpp"

namespace coalgsat {

struct OracleOptions {
  std::size_t max_states = 3;
  // Largest multiplicity (K uses 0/1 regardless), or largest denominator of a
  // probabilistic weight.
  unsigned weight_bound = 4;
  // Give up after this many complete truth guesses; `exhausted` is then false.
  std::size_t max_leaves = std::size_t{1} << 22;
};

struct OracleResult {
  std::optional<Model> model;  // psi everywhere, phi0 at state 0
  bool exhausted = true;       // the whole bounded space was searched
  std::size_t leaves = 0;
};

// Brute-force model search within the bounds, independent of the decision
// procedures. Each state guesses its atoms and the truth of every modal
// subformula; rows are then searched state by state, and any model found is
// certified with model_check. Sound for Sat, says nothing about Unsat.
OracleResult oracle_search(const Formula& psi, const Formula& phi0, Logic logic, const OracleOptions& opt = {});

}  // namespace coalgsat
