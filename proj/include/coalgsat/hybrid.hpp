#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coalgsat/closure.hpp"
#include "coalgsat/decision.hpp"

namespace coalgsat {

// Rewrites every @i chi into [forall](i -> chi).
Formula eliminate_sat(const Formula& f);

// Distinct [forall]-subformulas of f in pre-order (nested ones included).
std::vector<Formula> universal_subformulas(const Formula& f);

// chi[U]: outermost [forall]psi_k replaced by true if bit k of `u` is set, by false otherwise.
Formula substitute_universal(const Formula& chi, const std::vector<Formula>& univs, std::uint64_t u);

// Name of the k-th fresh nominal ("#k"). decide_hybrid rejects user nominals
// starting with '#'.
std::string fresh_nominal(std::size_t k);

// One guess U of which [forall]-subformulas hold.
struct UniversalInstance {
  std::uint64_t u = 0;
  Formula assumption;
  Formula goal;
  std::vector<Formula> side_goals;
};

// Instances for all U, from the full set downwards. Modal case: assumption
// AND_{k in U} psi_k[U], goal phi[U], side goals ~psi_k[U] for k outside U.
// Hybrid case: the side goals become conjuncts (i_k -> ~psi_k[U]) of the
// assumption with fresh nominals i_k = fresh_nominal(k).
std::vector<UniversalInstance> reduce_universal(const Formula& phi, bool hybrid);

// Consistency of a type assignment: i in beta(j) iff beta(i) == beta(j).
// `nominals[k]` is assigned `beta[k]`.
bool consistent_assignment(const std::vector<std::string>& nominals, const std::vector<Sequent>& beta,
                           const ClosureTable& cl);

struct HybridOptions {
  PolyBudget budget;
  // Presburger only: add #(i) <= 1 for every nominal to the assumption.
  bool kripke = false;
  bool extract = true;
  std::size_t max_assignments = std::size_t{1} << 20;
  std::size_t max_universal = 16;  // [forall]-subformulas
};

// Global satisfiability of psi (which may contain nominals) by type elimination
// over every consistent type assignment. On Sat, `root` is the state of `designated`
// if that nominal is given.
Decision decide_global_hybrid(const Formula& psi, Logic logic, const HybridOptions& opt = {},
                              const std::string& designated = "");

// Full pipeline: @ elimination, [forall] reduction, and either plain type
// elimination (no nominals) or assignment enumeration with a fresh nominal
// marking the goal.
Decision decide_hybrid(const Formula& psi, const Formula& phi0, Logic logic, const HybridOptions& opt = {});

// Disjoint union; returns the offset of the second model's states.
std::size_t append_model(Model& into, const Model& other);

}  // namespace coalgsat
