#include "coalgsat/worklist.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "coalgsat/errors.hpp"

namespace coalgsat {

namespace {

class Worklist {
 public:
  Worklist(const ClosureTable& cl, Logic logic, const WorklistOptions& opt)
      : opt_(opt), g_(cl, opt.child_cap), solver_(logic, opt.budget) {}

  Decision run() {
    const ClosureTable& cl = g_.closure();
    Sequent start = cl.empty_sequent();
    start.set(cl.psi_index());
    start.set(cl.phi0_index());
    root_ = g_.intern(start);
    define(root_);
    Decision d;
    try {
      while (!queue_.empty() && alpha(root_) != 0) {
        EdgeKey e = queue_.front();
        queue_.pop_front();
        queued_.erase(e);
        ++counts_[e];
        process(e);
        if (opt_.checkpoint) {
          alpha_.resize(g_.size(), -1);
          opt_.checkpoint(WorklistSnapshot{g_, solver_, alpha_, deps_, queue_, root_});
        }
      }
      d.verdict = alpha(root_) == 1 ? Verdict::Sat : Verdict::Unsat;
      if (d.verdict == Verdict::Sat && opt_.extract) {
        NodeSet defined(g_.size(), 0), ones(g_.size(), 0);
        for (std::size_t i = 0; i < g_.size(); ++i) {
          defined[i] = alpha(i) >= 0;
          ones[i] = alpha(i) == 1;
        }
        ExtractedModel x = extract_from_sequents(g_, solver_, defined, ones, root_);
        d.model = std::move(x.model);
        d.root = x.root;
      }
    } catch (const BackendIncomplete& ex) {
      d.verdict = Verdict::Unknown;
      d.reason = ex.what();
    }
    std::size_t processed = 0, defined = 0;
    for (const auto& [e, n] : counts_) processed += n;
    for (std::size_t i = 0; i < g_.size(); ++i) defined += alpha(i) >= 0;
    d.stats["generated"] = defined;
    d.stats["edges"] = counts_.size();
    d.stats["edges_processed"] = processed;
    d.stats["solver_calls"] = solver_.stats().calls;
    d.stats["backend_calls"] = solver_.stats().backend_calls;
    if (opt_.edge_counts) {
      opt_.edge_counts->clear();
      for (const auto& [e, n] : counts_) opt_.edge_counts->push_back(EdgeCount{e, targets(e), n});
    }
    return d;
  }

 private:
  signed char alpha(std::size_t id) const { return id < alpha_.size() ? alpha_[id] : -1; }
  void set_alpha(std::size_t id, signed char v) {
    if (id >= alpha_.size()) alpha_.resize(g_.size(), -1);
    alpha_[id] = v;
  }

  void push(const EdgeKey& e) {
    if (queued_.insert(e).second) queue_.push_back(e);
  }

  std::vector<EdgeKey> edges_of(std::size_t id) {
    if (g_.state(id)) return {EdgeKey{id, -1}};
    std::vector<EdgeKey> out;
    for (std::size_t r = 0; r < g_.rules(id).size(); ++r) out.push_back(EdgeKey{id, static_cast<long>(r)});
    return out;
  }

  void define(std::size_t id) {
    set_alpha(id, 1);
    deps_.erase(id);
    for (const auto& e : edges_of(id)) push(e);
  }

  std::size_t targets(const EdgeKey& e) {
    if (e.modal()) return g_.child_count(e.source);
    return g_.rules(e.source)[static_cast<std::size_t>(e.rule)].size();
  }

  void set_zero(std::size_t id) {
    set_alpha(id, 0);
    auto it = deps_.find(id);
    if (it == deps_.end()) return;
    for (const auto& e : it->second) push(e);
    deps_.erase(it);
  }

  // First undefined target of a modal edge, materializing children on demand.
  std::optional<std::size_t> undefined_child(std::size_t id) {
    std::size_t& cursor = cursor_[id];
    for (;;) {
      const auto& kids = g_.materialized(id);
      while (cursor < kids.size() && alpha(kids[cursor]) >= 0) ++cursor;
      if (cursor < kids.size()) return kids[cursor];
      if (g_.fully_materialized(id)) return std::nullopt;
      g_.materialize_next(id);
    }
  }

  void process(const EdgeKey& e) {
    const std::size_t src = e.source;
    if (!e.modal()) {
      std::vector<std::size_t> delta = g_.rules(src)[static_cast<std::size_t>(e.rule)];
      auto undef = std::find_if(delta.begin(), delta.end(), [&](std::size_t c) { return alpha(c) < 0; });
      if (undef != delta.end()) define(*undef);
      if (std::all_of(delta.begin(), delta.end(), [&](std::size_t c) { return alpha(c) == 0; })) {
        set_zero(src);
        return;
      }
      auto one = std::find_if(delta.begin(), delta.end(), [&](std::size_t c) { return alpha(c) == 1; });
      if (one != delta.end()) {
        deps_[*one].insert(e);
        for (auto it = queue_.begin(); it != queue_.end();) {
          if (it->source == src) {
            queued_.erase(*it);
            it = queue_.erase(it);
          } else {
            ++it;
          }
        }
      }
      return;
    }
    if (auto u = undefined_child(src)) define(*u);
    std::vector<std::size_t> s1;
    std::vector<Sequent> s1_seqs;
    bool complete = g_.fully_materialized(src);
    for (std::size_t c : g_.materialized(src)) {
      if (alpha(c) == 1) {
        s1.push_back(c);
        s1_seqs.push_back(g_.sequent(c));
      } else if (alpha(c) < 0) {
        complete = false;
      }
    }
    OneStepResult r = solver_.solve(pair_for_state(g_.sequent(src), s1_seqs, g_.closure()));
    if (r.verdict == Verdict::Unknown) throw BackendIncomplete(g_.closure().render(g_.sequent(src)));
    bool sat = r.verdict == Verdict::Sat;
    if (complete && !sat) {
      set_zero(src);
    } else if (sat) {
      for (std::size_t c : s1) deps_[c].insert(e);
    } else {
      // Some target is still undefined; this processing defined one, so the
      // re-check happens behind an expansion.
      push(e);
    }
  }

  const WorklistOptions& opt_;
  SequentGraph g_;
  OneStepSolver solver_;
  std::size_t root_ = 0;
  std::vector<signed char> alpha_;
  std::map<std::size_t, std::set<EdgeKey>> deps_;
  std::deque<EdgeKey> queue_;
  std::set<EdgeKey> queued_;
  std::map<EdgeKey, std::size_t> counts_;
  std::map<std::size_t, std::size_t> cursor_;
};

}  // namespace

Decision decide_worklist(const Formula& psi, const Formula& phi0, Logic logic, const WorklistOptions& opt) {
  ClosureTable cl(psi, phi0);
  require_plain(cl);
  return Worklist(cl, logic, opt).run();
}

bool edge_bound_audit(const std::vector<EdgeCount>& counts) {
  for (const auto& c : counts) {
    std::size_t bound = c.edge.modal() ? 2 * c.targets : c.targets + 1;
    if (c.processed > bound) return false;
  }
  return true;
}

}  // namespace coalgsat
