#pragma once

#include "coalgsat/decision.hpp"
#include "coalgsat/sequent.hpp"

namespace coalgsat {

struct DecideOptions {
  Algorithm algorithm = Algorithm::Worklist;
  PolyBudget budget;
  // Route through the hybrid pipeline even without nominals, @ or [forall].
  bool hybrid = false;
  // Presburger only: nominals denote states reached at most once.
  bool kripke = false;
  bool extract = true;
  std::size_t child_cap = kDefaultChildCap;
};

// Adapts both formulas to `logic` and decides whether the goal is satisfiable
// under the global assumption. Inputs with nominals, @ or [forall] (or with
// `hybrid`/`kripke` set) go to decide_hybrid, the rest to the chosen algorithm.
Decision decide(const Formula& assumption, const Formula& goal, Logic logic, const DecideOptions& opt = {});

bool needs_hybrid(const Formula& f);

}  // namespace coalgsat
