#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coalgsat/formula.hpp"
#include "coalgsat/numeric.hpp"

namespace coalgsat {

// A finite coalgebra: either a multigraph (non-negative integer multiplicities)
// or a subdistribution model (non-negative rationals, row sums at most 1).
struct Model {
  enum class Kind { Multigraph, Subdistribution };

  Kind kind = Kind::Multigraph;
  std::size_t num_states = 0;
  // edges[s][t] = multiplicity or weight of the transition s -> t; zero entries omitted.
  std::vector<std::map<std::size_t, Rat>> edges;
  std::vector<std::set<std::string>> atoms;
  std::map<std::string, std::size_t> nominals;

  explicit Model(Kind k = Kind::Multigraph, std::size_t n = 0) : kind(k), num_states(n), edges(n), atoms(n) {}

  std::size_t add_state();
  void set_edge(std::size_t from, std::size_t to, const Rat& weight);
  Rat total_weight(std::size_t s) const;
  // Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

// Extension of f as a per-state truth vector. Throws std::invalid_argument on a
// kind mismatch (weights against a multigraph, counts against a subdistribution)
// or an unassigned nominal.
std::vector<bool> model_check(const Model& m, const Formula& f);

// True iff every state satisfies f.
bool holds_globally(const Model& m, const Formula& f);

}  // namespace coalgsat
