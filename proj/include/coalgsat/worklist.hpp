#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "coalgsat/decision.hpp"
#include "coalgsat/sequent.hpp"

namespace coalgsat {

// A hyperedge, symbolically: the modal edge of a state (rule == -1) or the
// rule-th propositional rule application of a non-state.
struct EdgeKey {
  std::size_t source = 0;
  long rule = -1;
  bool modal() const { return rule < 0; }
  auto operator<=>(const EdgeKey&) const = default;
};

// Labelling alpha: -1 undefined, 0 unsatisfiable, 1 satisfiable.
struct WorklistSnapshot {
  SequentGraph& graph;
  OneStepSolver& solver;
  const std::vector<signed char>& alpha;
  const std::map<std::size_t, std::set<EdgeKey>>& deps;
  const std::deque<EdgeKey>& queue;
  std::size_t root;
};

struct EdgeCount {
  EdgeKey edge;
  std::size_t targets = 0;  // |Delta|
  std::size_t processed = 0;
};

struct WorklistOptions {
  PolyBudget budget;
  std::size_t child_cap = kDefaultChildCap;
  bool extract = true;
  // Invoked after every processed edge.
  std::function<void(const WorklistSnapshot&)> checkpoint;
  // Filled with per-edge processing counts when non-null.
  std::vector<EdgeCount>* edge_counts = nullptr;
};

// Concrete global caching with a FIFO hyperedge worklist, a partial labelling
// and dependency sets. Each expansion defines the first undefined target.
Decision decide_worklist(const Formula& psi, const Formula& phi0, Logic logic, const WorklistOptions& opt = {});

// Modal edges processed at most 2|Delta| times, propositional ones at most |Delta| + 1.
bool edge_bound_audit(const std::vector<EdgeCount>& counts);

}  // namespace coalgsat
