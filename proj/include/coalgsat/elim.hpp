#pragma once

#include <cstddef>
#include <vector>

#include "coalgsat/closure.hpp"
#include "coalgsat/decision.hpp"
#include "coalgsat/model.hpp"
#include "coalgsat/onestep.hpp"

namespace coalgsat {

// All psi-types of the closure: sets containing psi but not false that decide
// every formula and respect negation and conjunction. Enumerated by
// backtracking over the modal atoms with three-valued evaluation of psi.
std::vector<Sequent> all_types(const ClosureTable& cl);

// Propositional coherence of a single set (the type invariants).
bool is_type(const Sequent& s, const ClosureTable& cl);

// One application of the elimination functional: the members of `s` whose
// one-step pair against `s` is satisfiable. The witnesses of the survivors are
// stored in `witnesses` (parallel to the result) when given. Throws
// BackendIncomplete naming the type on an inconclusive one-step check.
std::vector<Sequent> elim_step(const std::vector<Sequent>& s, const ClosureTable& cl, OneStepSolver& solver,
                               std::vector<OneStepResult>* witnesses = nullptr);

// Greatest fixpoint of elim_step below `start`, with the witnesses of the last round.
struct ElimRun {
  std::vector<Sequent> survivors;
  std::vector<OneStepResult> witnesses;
  std::size_t rounds = 0;
};
ElimRun eliminate(std::vector<Sequent> start, const ClosureTable& cl, OneStepSolver& solver);

// A model on the surviving types: each type's witness is pushed along the
// valuation -> type correspondence (row i of the pair belongs to survivor i).
Model extract_model(const std::vector<Sequent>& survivors, const std::vector<OneStepResult>& witnesses,
                    const ClosureTable& cl, Logic logic);

struct ElimOptions {
  PolyBudget budget;
  bool extract = true;
};

// Type elimination: Sat iff some surviving type contains phi0.
Decision decide_elim(const Formula& psi, const Formula& phi0, Logic logic, const ElimOptions& opt = {});

}  // namespace coalgsat
