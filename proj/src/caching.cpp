#include "coalgsat/caching.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "coalgsat/errors.hpp"

namespace coalgsat {

namespace {

bool subset(const NodeSet& a, const NodeSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !(i < b.size() && b[i])) return false;
  return true;
}

void attach_model(Decision& d, SequentGraph& g, OneStepSolver& solver, const NodeSet& in_g, const NodeSet& e,
                  std::size_t root, bool extract) {
  if (!extract) return;
  ExtractedModel x = extract_from_sequents(g, solver, in_g, e, root);
  d.model = std::move(x.model);
  d.root = x.root;
}

}  // namespace

Decision decide_caching(const Formula& psi, const Formula& phi0, Logic logic, const CachingOptions& opt) {
  ClosureTable cl(psi, phi0);
  require_plain(cl);
  OneStepSolver solver(logic, opt.budget);
  SequentGraph g(cl, opt.child_cap);
  Decision d;
  NodeSet in_g, e, a;
  std::deque<std::size_t> pending;  // generated sequents that may have missing children
  auto generate = [&](std::size_t id) {
    if (id >= in_g.size()) in_g.resize(g.size(), 0);
    if (in_g[id]) return;
    in_g[id] = 1;
    pending.push_back(id);
  };
  std::size_t expansions = 0, propagations = 0;
  auto finish = [&](Verdict v) {
    d.verdict = v;
    d.stats["generated"] = static_cast<std::size_t>(std::count(in_g.begin(), in_g.end(), 1));
    d.stats["expansions"] = expansions;
    d.stats["propagations"] = propagations;
    d.stats["solver_calls"] = solver.stats().calls;
    d.stats["backend_calls"] = solver.stats().backend_calls;
    return d;
  };
  try {
    Sequent start = cl.empty_sequent();
    start.set(cl.psi_index());
    start.set(cl.phi0_index());
    const std::size_t root = g.intern(start);
    generate(root);
    auto propagate = [&]() {
      ++propagations;
      in_g.resize(g.size(), 0);
      e = nu_e(g, solver, in_g, e);
      a = mu_a(g, solver, in_g, a);
      if (opt.check_invariants) {
        NodeSet zero(in_g.size(), 0);
        if (!subset(e, nu_e(g, solver, in_g, zero)) || !subset(a, mu_a(g, solver, in_g, zero)))
          throw std::logic_error("caching: E or A left the fixpoints recomputed from scratch");
        for (std::size_t i = 0; i < e.size(); ++i)
          if (e[i] && i < a.size() && a[i]) throw std::logic_error("caching: E and A intersect");
      }
    };
    while (!pending.empty()) {
      std::size_t id = pending.front();
      pending.pop_front();
      if (g.fully_materialized(id)) {
        bool missing = false;
        for (std::size_t c : g.successors(id)) missing = missing || c >= in_g.size() || !in_g[c];
        if (!missing) continue;
      }
      // Expand.
      ++expansions;
      if (g.state(id)) {
        for (std::size_t k = 0; k < opt.batch && !g.fully_materialized(id); ++k) generate(g.materialize_next(id));
        if (!g.fully_materialized(id)) pending.push_back(id);
      } else {
        std::vector<std::size_t> succ = g.successors(id);
        for (std::size_t c : succ) generate(c);
      }
      if (opt.propagate_every > 0 && expansions % opt.propagate_every == 0) {
        propagate();
        if (e[root]) {
          attach_model(d, g, solver, in_g, e, root, opt.extract);
          return finish(Verdict::Sat);
        }
        if (a[root]) return finish(Verdict::Unsat);
      }
    }
    in_g.resize(g.size(), 0);
    ++propagations;
    e = nu_e(g, solver, in_g, e);
    if (e[root]) {
      attach_model(d, g, solver, in_g, e, root, opt.extract);
      return finish(Verdict::Sat);
    }
    return finish(Verdict::Unsat);
  } catch (const BackendIncomplete& ex) {
    d.reason = ex.what();
    return finish(Verdict::Unknown);
  }
}

}  // namespace coalgsat
