#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <unordered_map>
#include <vector>

#include "coalgsat/closure.hpp"
#include "coalgsat/decision.hpp"
#include "coalgsat/model.hpp"
#include "coalgsat/onestep.hpp"

namespace coalgsat {

inline constexpr std::size_t kDefaultChildCap = std::size_t{1} << 16;

// A state consists of modal literals only (atoms and nominals included).
bool is_state(const Sequent& gamma, const ClosureTable& cl);

// One application of a propositional rule: the decomposed member and the
// conclusions (none for bottom). The principal formula is consumed.
struct RuleApp {
  std::size_t principal = 0;
  std::vector<Sequent> conclusions;
};

// Rules for conjunction, negated conjunction, double negation and bottom, plus
// {Gamma, ~false} / {Gamma} so that sequents containing `true` reach states.
std::vector<RuleApp> prop_rules(const Sequent& gamma, const ClosureTable& cl);

// Children of a state: psi together with, for each distinct modal argument rho
// (rho and ~rho counted once), either rho or ~rho. Child k picks ~rho for
// argument j iff bit j of k is set.
class StateChildren {
 public:
  // Throws ResourceLimit when there would be more than `cap` children.
  StateChildren(const Sequent& gamma, const ClosureTable& cl, std::size_t cap = kDefaultChildCap);
  std::size_t count() const { return count_; }
  Sequent child(std::size_t k) const;

 private:
  Sequent base_;
  std::vector<std::size_t> args_;
  std::vector<std::size_t> negs_;
  std::size_t count_ = 1;
};

// All children: state children, or the union of the rule conclusions.
std::vector<Sequent> children(const Sequent& gamma, const ClosureTable& cl, std::size_t cap = kDefaultChildCap);

// Interned sequents with lazily computed successor structure. Interning a
// sequent does not by itself put it into any generated set; callers keep their
// own membership masks over node ids.
class SequentGraph {
 public:
  explicit SequentGraph(const ClosureTable& cl, std::size_t child_cap = kDefaultChildCap)
      : cl_(&cl), cap_(child_cap) {}

  const ClosureTable& closure() const { return *cl_; }
  std::size_t size() const { return nodes_.size(); }
  // Returns the node id; `created` reports whether the sequent was new.
  std::size_t intern(const Sequent& s, bool* created = nullptr);
  const Sequent& sequent(std::size_t id) const { return nodes_[id].seq; }
  bool state(std::size_t id) const { return nodes_[id].state; }

  // Non-states: conclusions of every rule application, as node ids.
  const std::vector<std::vector<std::size_t>>& rules(std::size_t id);
  // States: total number of children and the ones materialized so far, in order.
  std::size_t child_count(std::size_t id);
  const std::vector<std::size_t>& materialized(std::size_t id) const { return nodes_[id].kids; }
  bool fully_materialized(std::size_t id);
  // Materializes the next child of a state and returns its id.
  std::size_t materialize_next(std::size_t id);
  // Known successors: materialized children of a state, or all rule conclusions.
  const std::vector<std::size_t>& successors(std::size_t id);
  // Nodes having `id` among their known successors.
  const std::vector<std::size_t>& parents(std::size_t id) const { return nodes_[id].parents; }

 private:
  struct Node {
    Sequent seq;
    bool state = false;
    bool expanded = false;  // rules (non-states) or child enumerator (states) prepared
    std::vector<std::vector<std::size_t>> rules;
    std::vector<std::size_t> kids;  // successors in first-seen order, distinct
    std::vector<std::size_t> parents;
    std::unique_ptr<StateChildren> enumerator;
    std::size_t next_child = 0;
  };
  void prepare(std::size_t id);
  void link(std::size_t from, std::size_t to);

  const ClosureTable* cl_;
  std::size_t cap_;
  std::deque<Node> nodes_;  // stable references across interning
  std::unordered_map<Sequent, std::size_t, SequentHash> index_;
};

// Membership mask over node ids.
using NodeSet = std::vector<char>;

// The functionals E_G and A_G evaluated at a single node. `in_g` is the
// generated set G, `s` the argument set (a subset of G). Throws
// BackendIncomplete when the one-step solver gives up.
bool e_member(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& s, std::size_t id);
bool a_member(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& s, std::size_t id);

// E_G(S) and A_G(S) over the whole of G.
NodeSet eg_step(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& s);
NodeSet ag_step(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& s);

// nu S. E_G(S u seed) and mu S. A_G(S u seed). Only nodes whose successors
// changed in the previous round are re-evaluated.
NodeSet nu_e(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& seed);
NodeSet mu_a(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& seed);

// Builds a model from a postfixpoint `s` of E_G containing `root`: every
// sequent is resolved to a state of `s` by following rule conclusions inside
// `s`, and each state's one-step witness over its children in `s` becomes its
// successor structure. The model is checked against psi (globally) and the
// root sequent (at the returned root state) before it is returned.
struct ExtractedModel {
  Model model;
  std::size_t root = 0;
};
ExtractedModel extract_from_sequents(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& s,
                                     std::size_t root);

// Shared helper: the model state atoms/nominals of a state or type, and edge
// weights per logic (K edges get weight 1).
void label_state(Model& m, std::size_t state, const Sequent& gamma, const ClosureTable& cl);
void add_weight(Model& m, Logic logic, std::size_t from, std::size_t to, const Rat& w);

// Re-checks a candidate model: psi everywhere and every member of `root_seq` at `root`.
// Throws std::logic_error on failure.
void verify_model(const Model& m, const ClosureTable& cl, const Sequent& root_seq, std::size_t root);

// Throws std::invalid_argument if the closure contains @ or [forall], or
// nominals unless they are allowed.
void require_plain(const ClosureTable& cl, bool allow_nominals = false);

}  // namespace coalgsat
