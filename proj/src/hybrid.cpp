#include "coalgsat/hybrid.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "coalgsat/elim.hpp"
#include "coalgsat/errors.hpp"
#include "coalgsat/sequent.hpp"

namespace coalgsat {

namespace {

Formula rewrite(const Formula& f, const std::function<std::optional<Formula>(const Formula&)>& leaf,
                std::unordered_map<Formula, Formula, FormulaHash>& memo) {
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  Formula out;
  if (auto r = leaf(f)) {
    out = *r;
  } else {
    std::vector<Formula> kids;
    for (const auto& c : f.children()) kids.push_back(rewrite(c, leaf, memo));
    out = with_children(f, std::move(kids));
  }
  memo.emplace(f, out);
  return out;
}

}  // namespace

Formula eliminate_sat(const Formula& f) {
  std::unordered_map<Formula, Formula, FormulaHash> memo;
  std::function<std::optional<Formula>(const Formula&)> leaf = [&](const Formula& g) -> std::optional<Formula> {
    if (g.kind() != Kind::Sat) return std::nullopt;
    return univ(implies(nominal(g.name()), rewrite(g.child(), leaf, memo)));
  };
  return rewrite(f, leaf, memo);
}

std::vector<Formula> universal_subformulas(const Formula& f) {
  std::vector<Formula> out;
  for (const auto& g : subformulas(f))
    if (g.kind() == Kind::Univ) out.push_back(g);
  return out;
}

Formula substitute_universal(const Formula& chi, const std::vector<Formula>& univs, std::uint64_t u) {
  std::unordered_map<Formula, Formula, FormulaHash> memo;
  return rewrite(
      chi,
      [&](const Formula& g) -> std::optional<Formula> {
        if (g.kind() != Kind::Univ) return std::nullopt;
        auto k = static_cast<std::size_t>(std::find(univs.begin(), univs.end(), g) - univs.begin());
        if (k == univs.size()) throw std::invalid_argument("substitute_universal: unknown [forall]-subformula");
        return (u >> k) & 1 ? top() : bot();
      },
      memo);
}

std::string fresh_nominal(std::size_t k) { return "#" + std::to_string(k); }

std::vector<UniversalInstance> reduce_universal(const Formula& phi, bool hybrid) {
  std::vector<Formula> univs = universal_subformulas(phi);
  const std::size_t n = univs.size();
  if (n >= 63) throw ResourceLimit("too many [forall]-subformulas");
  std::vector<UniversalInstance> out;
  for (std::uint64_t u = (std::uint64_t{1} << n); u-- > 0;) {
    UniversalInstance inst;
    inst.u = u;
    inst.goal = substitute_universal(phi, univs, u);
    std::vector<Formula> assume;
    for (std::size_t k = 0; k < n; ++k) {
      Formula body = substitute_universal(univs[k].child(), univs, u);
      if ((u >> k) & 1) {
        assume.push_back(body);
      } else if (hybrid) {
        assume.push_back(implies(nominal(fresh_nominal(k)), neg(body)));
      } else {
        inst.side_goals.push_back(neg(body));
      }
    }
    inst.assumption = conj_all(assume);
    out.push_back(std::move(inst));
  }
  return out;
}

bool consistent_assignment(const std::vector<std::string>& nominals, const std::vector<Sequent>& beta,
                           const ClosureTable& cl) {
  for (std::size_t i = 0; i < nominals.size(); ++i) {
    long idx = cl.index_of(nominal(nominals[i]));
    if (idx < 0) throw std::invalid_argument("nominal outside the closure: " + nominals[i]);
    for (std::size_t j = 0; j < nominals.size(); ++j)
      if (beta[j].test(static_cast<std::size_t>(idx)) != (beta[i] == beta[j])) return false;
  }
  return true;
}

std::size_t append_model(Model& into, const Model& other) {
  if (into.kind != other.kind) throw std::invalid_argument("append_model: kind mismatch");
  std::size_t offset = into.num_states;
  for (std::size_t s = 0; s < other.num_states; ++s) into.add_state();
  for (std::size_t s = 0; s < other.num_states; ++s) {
    for (const auto& [t, w] : other.edges[s]) into.set_edge(offset + s, offset + t, w);
    into.atoms[offset + s] = other.atoms[s];
  }
  for (const auto& [name, s] : other.nominals) into.nominals[name] = offset + s;
  return offset;
}

Decision decide_global_hybrid(const Formula& psi, Logic logic, const HybridOptions& opt,
                              const std::string& designated) {
  ClosureTable cl(psi, top());
  require_plain(cl, true);
  OneStepSolver solver(logic, opt.budget);
  Decision d;
  d.verdict = Verdict::Unsat;
  std::size_t assignments = 0;
  bool incomplete = false;
  try {
    std::vector<Sequent> types = all_types(cl);
    d.stats["types"] = types.size();
    // Every nu E_beta lies below the greatest fixpoint over all types.
    ElimRun full = eliminate(types, cl, solver);
    std::vector<std::string> noms = nominals_of(psi);
    std::vector<std::size_t> idx;
    for (const auto& name : noms) idx.push_back(static_cast<std::size_t>(cl.index_of(nominal(name))));
    auto nominal_free = [&](const Sequent& s) {
      return std::none_of(idx.begin(), idx.end(), [&](std::size_t i) { return s.test(i); });
    };
    std::vector<Sequent> free_types;
    for (const auto& s : full.survivors)
      if (nominal_free(s)) free_types.push_back(s);
    std::vector<std::vector<const Sequent*>> cands(noms.size());
    for (std::size_t k = 0; k < noms.size(); ++k)
      for (const auto& s : full.survivors)
        if (s.test(idx[k])) cands[k].push_back(&s);

    std::vector<Sequent> beta;
    auto try_assignment = [&]() -> bool {
      if (++assignments > opt.max_assignments) throw ResourceLimit("type assignment cap exceeded");
      std::vector<Sequent> start;
      for (const auto& b : beta)
        if (std::find(start.begin(), start.end(), b) == start.end()) start.push_back(b);
      start.insert(start.end(), free_types.begin(), free_types.end());
      ElimRun run;
      try {
        run = eliminate(std::move(start), cl, solver);
      } catch (const BackendIncomplete& e) {
        incomplete = true;
        d.reason = e.what();
        return false;
      }
      auto pos = [&](const Sequent& s) {
        return static_cast<std::size_t>(std::find(run.survivors.begin(), run.survivors.end(), s) -
                                        run.survivors.begin());
      };
      for (const auto& b : beta)
        if (pos(b) == run.survivors.size()) return false;
      if (run.survivors.empty()) return false;
      d.verdict = Verdict::Sat;
      auto des = std::find(noms.begin(), noms.end(), designated);
      std::size_t root = des == noms.end() ? 0 : pos(beta[static_cast<std::size_t>(des - noms.begin())]);
      d.root = root;
      if (opt.extract) {
        Model m = extract_model(run.survivors, run.witnesses, cl, logic);
        verify_model(m, cl, run.survivors[root], root);
        for (std::size_t k = 0; k < noms.size(); ++k)
          if (m.nominals.at(noms[k]) != pos(beta[k])) throw std::logic_error("nominal placed off its assigned type");
        d.model = std::move(m);
      }
      return true;
    };
    // Backtracking over assignments, checking consistency of each prefix.
    auto rec = [&](auto&& self, std::size_t k) -> bool {
      if (k == noms.size()) return try_assignment();
      for (const Sequent* c : cands[k]) {
        beta.push_back(*c);
        bool ok = true;
        for (std::size_t i = 0; i <= k && ok; ++i)
          for (std::size_t j = 0; j <= k && ok; ++j)
            ok = beta[j].test(idx[i]) == (beta[i] == beta[j]);
        if (ok && self(self, k + 1)) return true;
        beta.pop_back();
      }
      return false;
    };
    rec(rec, 0);
  } catch (const BackendIncomplete& e) {
    incomplete = true;
    d.reason = e.what();
  }
  if (d.verdict != Verdict::Sat && incomplete) d.verdict = Verdict::Unknown;
  d.stats["assignments"] = assignments;
  d.stats["solver_calls"] = solver.stats().calls;
  d.stats["backend_calls"] = solver.stats().backend_calls;
  return d;
}

namespace {

void add_stats(Decision& into, const Decision& from) {
  for (const auto& [k, v] : from.stats) into.stats[k] += v;
}

}  // namespace

Decision decide_hybrid(const Formula& psi, const Formula& phi0, Logic logic, const HybridOptions& opt) {
  std::vector<std::string> noms = nominals_of(conj(psi, phi0));
  for (const auto& i : noms)
    if (i.starts_with('#')) throw std::invalid_argument("nominal name reserved for fresh nominals: '" + i);
  Formula assumption = psi;
  if (opt.kripke) {
    if (logic != Logic::Presburger) throw std::invalid_argument("the Kripke encoding applies to Presburger logic");
    for (const auto& i : noms) assumption = conj(assumption, presburger({{Int(1), nominal(i)}}, Rel::Lt, Int(2)));
  }
  Formula psi1 = eliminate_sat(assumption), phi1 = eliminate_sat(phi0);
  // What the final model must satisfy at its root.
  Formula target = conj(phi0, univ(assumption));

  std::vector<UniversalInstance> insts;
  if (!contains_kind(psi1, Kind::Univ) && !contains_kind(phi1, Kind::Univ)) {
    insts.push_back(UniversalInstance{0, psi1, phi1, {}});
  } else {
    Formula phi = conj(phi1, univ(psi1));
    if (universal_subformulas(phi).size() > opt.max_universal) throw ResourceLimit("too many [forall]-subformulas");
    insts = reduce_universal(phi, !noms.empty());
  }

  Decision d;
  d.verdict = Verdict::Unsat;
  bool incomplete = false;
  std::size_t tried = 0;
  const std::string goal_nominal = fresh_nominal(universal_subformulas(conj(phi1, univ(psi1))).size());
  for (const auto& inst : insts) {
    ++tried;
    if (noms.empty()) {
      ElimOptions eo;
      eo.budget = opt.budget;
      eo.extract = opt.extract;
      Decision main = decide_elim(inst.assumption, inst.goal, logic, eo);
      add_stats(d, main);
      if (main.verdict == Verdict::Unknown) incomplete = true, d.reason = main.reason;
      if (main.verdict != Verdict::Sat) continue;
      bool all = true;
      std::vector<Decision> sides;
      for (const auto& s : inst.side_goals) {
        sides.push_back(decide_elim(inst.assumption, s, logic, eo));
        add_stats(d, sides.back());
        if (sides.back().verdict == Verdict::Unknown) incomplete = true, d.reason = sides.back().reason;
        if (sides.back().verdict != Verdict::Sat) {
          all = false;
          break;
        }
      }
      if (!all) continue;
      d.verdict = Verdict::Sat;
      if (opt.extract) {
        Model m = *main.model;
        d.root = main.root;
        for (const auto& s : sides) append_model(m, *s.model);
        d.model = std::move(m);
      }
      break;
    }
    Formula global = conj(inst.assumption, implies(nominal(goal_nominal), inst.goal));
    for (const auto& i : noms) global = conj(global, disj(nominal(i), neg(nominal(i))));
    Decision g = decide_global_hybrid(global, logic, opt, goal_nominal);
    add_stats(d, g);
    if (g.verdict == Verdict::Unknown) incomplete = true, d.reason = g.reason;
    if (g.verdict != Verdict::Sat) continue;
    d.verdict = Verdict::Sat;
    d.root = g.root;
    d.model = std::move(g.model);
    break;
  }
  if (d.verdict == Verdict::Sat && d.model) {
    std::erase_if(d.model->nominals, [](const auto& kv) { return kv.first.starts_with('#'); });
    if (!model_check(*d.model, target)[d.root]) throw std::logic_error("hybrid model fails the input formulas");
  }
  if (d.verdict != Verdict::Sat && incomplete) d.verdict = Verdict::Unknown;
  d.stats["instances"] = tried;
  return d;
}

}  // namespace coalgsat
