#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coalgsat/closure.hpp"
#include "coalgsat/formula.hpp"
#include "coalgsat/logic.hpp"
#include "coalgsat/numeric.hpp"
#include "coalgsat/realsolve.hpp"

namespace coalgsat {

enum class Verdict { Sat, Unsat, Unknown };

std::string verdict_name(Verdict v);

// A fresh one-step variable, standing for argument `position` of the modal
// literal `literal` (whose argument formula is `arg`).
struct StepVar {
  Formula literal;
  std::size_t position = 0;
  Formula arg;
};

// Signed modal atom with its arguments replaced by variables. `op` is the
// original modal atom; only its operator data (coefficients, polynomial, ...)
// is used, its arguments are abstracted by `vars`.
struct ClauseLiteral {
  bool positive = true;
  Formula op;
  std::vector<std::size_t> vars;
};

using Valuation = std::vector<bool>;

// A clean modal conjunctive clause and a propositional constraint given as an
// explicit list of valuations (a DNF of full conjunctive clauses).
struct OneStepPair {
  std::vector<StepVar> variables;
  std::vector<ClauseLiteral> clause;
  std::vector<Valuation> constraint;
  // For pairs built from sequents: index of the type or child behind each valuation.
  std::vector<std::size_t> origin;
};

// Weighted valuations: constraint index -> positive weight. Multiplicities for
// Presburger, probabilities for the probabilistic logic, weight 1 for K.
struct OneStepResult {
  Verdict verdict = Verdict::Unsat;
  std::vector<std::pair<std::size_t, Rat>> witness;
};

// One literal per modal atom of the closure with the sign found in `gamma`,
// and one valuation per member of `types` (assigning a variable true iff its
// argument belongs to the type).
OneStepPair pair_for_type(const Sequent& gamma, const std::vector<Sequent>& types, const ClosureTable& cl);

// One variable per argument of every modal literal of the state `gamma`, and one
// valuation per child. A child containing both an argument and its negation
// contributes a contradictory clause and is left out. Throws
// std::invalid_argument on a child deciding neither.
OneStepPair pair_for_state(const Sequent& gamma, const std::vector<Sequent>& children, const ClosureTable& cl);

// Re-checks a Sat result against the semantics of `logic`.
bool check_witness(const OneStepPair& pair, const OneStepResult& result, Logic logic);

// Nullary literals (atoms, nominals) are satisfiable iff no atom occurs with both signs.
bool nullary_consistent(const OneStepPair& pair);

// Measure of variable v under a witness: total weight of support valuations making v true.
Rat variable_measure(const OneStepPair& pair, const OneStepResult& result, std::size_t var);

// Instance solvers.
OneStepResult solve_k(const OneStepPair& pair);
OneStepResult solve_presburger(const OneStepPair& pair);
OneStepResult solve_prob(const OneStepPair& pair, const PolyBudget& budget = {});

struct SolverStats {
  std::size_t calls = 0;
  std::size_t backend_calls = 0;
  std::size_t cache_hits = 0;
  std::size_t unknowns = 0;
};

// Dispatches to the instance solver of a logic. Pairs are canonicalized
// (duplicate valuations removed), answers are memoized, and every Sat witness is
// re-verified with check_witness before it is returned.
class OneStepSolver {
 public:
  explicit OneStepSolver(Logic logic, PolyBudget budget = {}, bool memoize = true)
      : logic_(logic), budget_(budget), memoize_(memoize) {}

  Logic logic() const { return logic_; }
  OneStepResult solve(const OneStepPair& pair);
  const SolverStats& stats() const { return stats_; }

 private:
  OneStepResult dispatch(const OneStepPair& pair);

  Logic logic_;
  PolyBudget budget_;
  bool memoize_;
  SolverStats stats_;
  std::unordered_map<std::string, OneStepResult> cache_;
};

}  // namespace coalgsat
