#include "coalgsat/sequent.hpp"

#include <algorithm>
#include <stdexcept>

#include "coalgsat/errors.hpp"

namespace coalgsat {

namespace {

bool in(const NodeSet& s, std::size_t id) { return id < s.size() && s[id]; }

Sequent without(const Sequent& gamma, std::size_t i) {
  Sequent out = gamma;
  out.reset(i);
  return out;
}

}  // namespace

bool is_state(const Sequent& gamma, const ClosureTable& cl) {
  for (auto i = gamma.find_first(); i != Sequent::npos; i = gamma.find_next(i))
    if (!is_modal_literal(cl.formula(i))) return false;
  return true;
}

std::vector<RuleApp> prop_rules(const Sequent& gamma, const ClosureTable& cl) {
  std::vector<RuleApp> out;
  for_each_member(gamma, [&](std::size_t i) {
    const Formula& f = cl.formula(i);
    RuleApp app{i, {}};
    switch (f.kind()) {
      case Kind::Bot:
        break;
      case Kind::And: {
        Sequent c = without(gamma, i);
        for (std::size_t s : cl.sub_indices(i)) c.set(s);
        app.conclusions.push_back(std::move(c));
        break;
      }
      case Kind::Neg: {
        std::size_t inner = cl.sub_indices(i)[0];
        const Formula& g = cl.formula(inner);
        if (g.kind() == Kind::Bot) {
          app.conclusions.push_back(without(gamma, i));
        } else if (g.kind() == Kind::Neg) {
          Sequent c = without(gamma, i);
          c.set(cl.sub_indices(inner)[0]);
          app.conclusions.push_back(std::move(c));
        } else if (g.kind() == Kind::And) {
          for (std::size_t s : cl.sub_indices(inner)) {
            Sequent c = without(gamma, i);
            c.set(cl.nneg_index(s));
            app.conclusions.push_back(std::move(c));
          }
        } else {
          return;  // negated modal atom
        }
        break;
      }
      default:
        return;
    }
    out.push_back(std::move(app));
  });
  return out;
}

StateChildren::StateChildren(const Sequent& gamma, const ClosureTable& cl, std::size_t cap)
    : base_(cl.empty_sequent()) {
  base_.set(cl.psi_index());
  // Keyed by the pair {rho, ~rho}: ~true and true share an index but not a pair.
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for_each_member(gamma, [&](std::size_t i) {
    const Formula& lit = cl.formula(i);
    if (!is_modal_literal(lit)) throw std::invalid_argument("not a state: " + cl.render(gamma));
    for (const auto& arg : literal_atom(lit).children()) {
      auto a = static_cast<std::size_t>(cl.index_of(arg));
      std::pair<std::size_t, std::size_t> key{std::min(a, cl.nneg_index(a)), std::max(a, cl.nneg_index(a))};
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      args_.push_back(a);
      negs_.push_back(cl.nneg_index(a));
    }
  });
  if (args_.size() >= 63 || (std::size_t{1} << args_.size()) > cap)
    throw ResourceLimit("state " + cl.render(gamma) + " has 2^" + std::to_string(args_.size()) +
                        " children, above the cap of " + std::to_string(cap));
  count_ = std::size_t{1} << args_.size();
}

Sequent StateChildren::child(std::size_t k) const {
  Sequent c = base_;
  for (std::size_t j = 0; j < args_.size(); ++j) c.set((k >> j) & 1 ? negs_[j] : args_[j]);
  return c;
}

std::vector<Sequent> children(const Sequent& gamma, const ClosureTable& cl, std::size_t cap) {
  std::vector<Sequent> out;
  if (is_state(gamma, cl)) {
    StateChildren en(gamma, cl, cap);
    for (std::size_t k = 0; k < en.count(); ++k) out.push_back(en.child(k));
    return out;
  }
  for (auto& app : prop_rules(gamma, cl))
    for (auto& c : app.conclusions)
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  return out;
}

std::size_t SequentGraph::intern(const Sequent& s, bool* created) {
  auto it = index_.find(s);
  if (it != index_.end()) {
    if (created) *created = false;
    return it->second;
  }
  std::size_t id = nodes_.size();
  Node n;
  n.seq = s;
  n.state = is_state(s, *cl_);
  nodes_.push_back(std::move(n));
  index_.emplace(s, id);
  if (created) *created = true;
  return id;
}

void SequentGraph::link(std::size_t from, std::size_t to) {
  auto& kids = nodes_[from].kids;
  if (std::find(kids.begin(), kids.end(), to) != kids.end()) return;
  kids.push_back(to);
  nodes_[to].parents.push_back(from);
}

void SequentGraph::prepare(std::size_t id) {
  if (nodes_[id].expanded) return;
  if (nodes_[id].state) {
    nodes_[id].enumerator = std::make_unique<StateChildren>(nodes_[id].seq, *cl_, cap_);
  } else {
    std::vector<std::vector<std::size_t>> rules;
    for (const auto& app : prop_rules(nodes_[id].seq, *cl_)) {
      std::vector<std::size_t> ids;
      for (const auto& c : app.conclusions) ids.push_back(intern(c));
      rules.push_back(std::move(ids));
    }
    for (const auto& r : rules)
      for (std::size_t c : r) link(id, c);
    nodes_[id].rules = std::move(rules);
  }
  nodes_[id].expanded = true;
}

const std::vector<std::vector<std::size_t>>& SequentGraph::rules(std::size_t id) {
  prepare(id);
  return nodes_[id].rules;
}

std::size_t SequentGraph::child_count(std::size_t id) {
  prepare(id);
  return nodes_[id].state ? nodes_[id].enumerator->count() : nodes_[id].kids.size();
}

bool SequentGraph::fully_materialized(std::size_t id) {
  prepare(id);
  return !nodes_[id].state || nodes_[id].next_child == nodes_[id].enumerator->count();
}

std::size_t SequentGraph::materialize_next(std::size_t id) {
  prepare(id);
  Node& n = nodes_[id];
  if (!n.state || n.next_child >= n.enumerator->count())
    throw std::logic_error("materialize_next: nothing left to materialize");
  Sequent c = n.enumerator->child(n.next_child++);
  std::size_t cid = intern(c);
  link(id, cid);
  return cid;
}

const std::vector<std::size_t>& SequentGraph::successors(std::size_t id) {
  prepare(id);
  return nodes_[id].kids;
}

namespace {

OneStepResult solve_state(SequentGraph& g, OneStepSolver& solver, std::size_t id, const std::vector<Sequent>& kids) {
  OneStepPair pair = pair_for_state(g.sequent(id), kids, g.closure());
  OneStepResult r = solver.solve(pair);
  if (r.verdict == Verdict::Unknown) throw BackendIncomplete(g.closure().render(g.sequent(id)));
  return r;
}

}  // namespace

bool e_member(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& s, std::size_t id) {
  if (!in(in_g, id)) return false;
  const auto& succ = g.successors(id);
  if (!g.state(id)) {
    return std::any_of(succ.begin(), succ.end(), [&](std::size_t c) { return in(in_g, c) && in(s, c); });
  }
  std::vector<Sequent> kids;
  for (std::size_t c : succ)
    if (in(in_g, c) && in(s, c)) kids.push_back(g.sequent(c));
  return solve_state(g, solver, id, kids).verdict == Verdict::Sat;
}

bool a_member(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& s, std::size_t id) {
  if (!in(in_g, id)) return false;
  if (!g.state(id)) {
    for (const auto& rule : g.rules(id))
      if (std::all_of(rule.begin(), rule.end(), [&](std::size_t c) { return in(in_g, c) && in(s, c); })) return true;
    return false;
  }
  if (!g.fully_materialized(id)) return false;
  const auto& succ = g.successors(id);
  if (!std::all_of(succ.begin(), succ.end(), [&](std::size_t c) { return in(in_g, c); })) return false;
  std::vector<Sequent> kids;
  for (std::size_t c : succ)
    if (!in(s, c)) kids.push_back(g.sequent(c));
  return solve_state(g, solver, id, kids).verdict == Verdict::Unsat;
}

NodeSet eg_step(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& s) {
  NodeSet out(in_g.size(), 0);
  for (std::size_t id = 0; id < in_g.size(); ++id) out[id] = e_member(g, solver, in_g, s, id);
  return out;
}

NodeSet ag_step(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& s) {
  NodeSet out(in_g.size(), 0);
  for (std::size_t id = 0; id < in_g.size(); ++id) out[id] = a_member(g, solver, in_g, s, id);
  return out;
}

namespace {

std::vector<std::size_t> affected_parents(const SequentGraph& g, const std::vector<std::size_t>& changed,
                                          const NodeSet& in_g) {
  std::vector<std::size_t> out;
  for (std::size_t c : changed)
    for (std::size_t p : g.parents(c))
      if (in(in_g, p)) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

NodeSet nu_e(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& seed) {
  const std::size_t n = in_g.size();
  NodeSet cur = in_g;
  NodeSet arg(n, 0);
  for (std::size_t i = 0; i < n; ++i) arg[i] = cur[i] || in(seed, i);
  std::vector<std::size_t> check;
  for (std::size_t i = 0; i < n; ++i)
    if (in_g[i]) check.push_back(i);
  for (;;) {
    std::vector<std::size_t> removed;
    for (std::size_t id : check)
      if (cur[id] && !e_member(g, solver, in_g, arg, id)) removed.push_back(id);
    if (removed.empty()) return cur;
    std::vector<std::size_t> changed;
    for (std::size_t id : removed) {
      cur[id] = 0;
      if (!in(seed, id)) {
        arg[id] = 0;
        changed.push_back(id);
      }
    }
    check = affected_parents(g, changed, in_g);
  }
}

NodeSet mu_a(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& seed) {
  const std::size_t n = in_g.size();
  NodeSet cur(n, 0);
  NodeSet arg(n, 0);
  for (std::size_t i = 0; i < n; ++i) arg[i] = in(seed, i) && in_g[i];
  std::vector<std::size_t> check;
  for (std::size_t i = 0; i < n; ++i)
    if (in_g[i]) check.push_back(i);
  for (;;) {
    std::vector<std::size_t> added;
    for (std::size_t id : check)
      if (!cur[id] && a_member(g, solver, in_g, arg, id)) added.push_back(id);
    if (added.empty()) return cur;
    std::vector<std::size_t> changed;
    for (std::size_t id : added) {
      cur[id] = 1;
      if (!arg[id]) {
        arg[id] = 1;
        changed.push_back(id);
      }
    }
    check = affected_parents(g, changed, in_g);
  }
}

void label_state(Model& m, std::size_t state, const Sequent& gamma, const ClosureTable& cl) {
  for_each_member(gamma, [&](std::size_t i) {
    const Formula& f = cl.formula(i);
    if (f.kind() == Kind::Atom) m.atoms[state].insert(f.name());
    if (f.kind() == Kind::Nominal) m.nominals[f.name()] = state;
  });
}

void add_weight(Model& m, Logic logic, std::size_t from, std::size_t to, const Rat& w) {
  if (logic == Logic::K) {
    m.set_edge(from, to, Rat(1));
    return;
  }
  auto it = m.edges[from].find(to);
  m.set_edge(from, to, it == m.edges[from].end() ? w : it->second + w);
}

void verify_model(const Model& m, const ClosureTable& cl, const Sequent& root_seq, std::size_t root) {
  m.validate();
  if (!holds_globally(m, cl.psi()))
    throw std::logic_error("extracted model violates the assumption " + render(cl.psi()));
  for_each_member(root_seq, [&](std::size_t i) {
    if (!model_check(m, cl.formula(i))[root])
      throw std::logic_error("extracted model violates " + render(cl.formula(i)) + " at the root");
  });
}

ExtractedModel extract_from_sequents(SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& s,
                                     std::size_t root) {
  const ClosureTable& cl = g.closure();
  if (!in(s, root)) throw std::logic_error("extract_from_sequents: root outside the postfixpoint");
  auto resolve = [&](std::size_t id) {
    while (!g.state(id)) {
      const auto& succ = g.successors(id);
      auto it = std::find_if(succ.begin(), succ.end(), [&](std::size_t c) { return in(in_g, c) && in(s, c); });
      if (it == succ.end()) throw std::logic_error("extract_from_sequents: not a postfixpoint at " + cl.render(g.sequent(id)));
      id = *it;
    }
    return id;
  };
  ExtractedModel out;
  out.model = Model(model_kind(solver.logic()), 0);
  std::unordered_map<std::size_t, std::size_t> index;
  std::vector<std::size_t> queue;
  auto state_of = [&](std::size_t node) {
    auto [it, fresh] = index.emplace(node, out.model.num_states);
    if (fresh) {
      out.model.add_state();
      label_state(out.model, it->second, g.sequent(node), cl);
      queue.push_back(node);
    }
    return it->second;
  };
  out.root = state_of(resolve(root));
  for (std::size_t q = 0; q < queue.size(); ++q) {
    std::size_t node = queue[q];
    std::vector<std::size_t> kid_ids;
    std::vector<Sequent> kids;
    for (std::size_t c : g.successors(node))
      if (in(in_g, c) && in(s, c)) {
        kid_ids.push_back(c);
        kids.push_back(g.sequent(c));
      }
    OneStepPair pair = pair_for_state(g.sequent(node), kids, cl);
    OneStepResult r = solver.solve(pair);
    if (r.verdict != Verdict::Sat)
      throw std::logic_error("extract_from_sequents: state without witness " + cl.render(g.sequent(node)));
    std::size_t from = index.at(node);
    for (const auto& [idx, w] : r.witness) {
      std::size_t to = state_of(resolve(kid_ids[pair.origin[idx]]));
      add_weight(out.model, solver.logic(), from, to, w);
    }
  }
  verify_model(out.model, cl, g.sequent(root), out.root);
  return out;
}

void require_plain(const ClosureTable& cl, bool allow_nominals) {
  for (const auto& f : cl.formulas()) {
    if (f.kind() == Kind::Sat || f.kind() == Kind::Univ)
      throw std::invalid_argument("satisfaction operators and [forall] need the hybrid procedure: " + render(f));
    if (!allow_nominals && f.kind() == Kind::Nominal)
      throw std::invalid_argument("nominals need the hybrid procedure: " + render(f));
  }
}

}  // namespace coalgsat
