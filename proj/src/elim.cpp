#include "coalgsat/elim.hpp"

#include <stdexcept>

#include "coalgsat/errors.hpp"
#include "coalgsat/sequent.hpp"

namespace coalgsat {

namespace {

// Closure indices with every formula after its immediate subformulas.
std::vector<std::size_t> bottom_up_order(const ClosureTable& cl) {
  std::vector<std::size_t> order;
  std::vector<char> seen(cl.size(), 0);
  auto visit = [&](auto&& self, std::size_t k) -> void {
    if (seen[k]) return;
    seen[k] = 1;
    for (std::size_t s : cl.sub_indices(k)) self(self, s);
    order.push_back(k);
  };
  for (std::size_t k = 0; k < cl.size(); ++k) visit(visit, k);
  return order;
}

// Three-valued evaluation over the closure; -1 is undetermined.
void evaluate(const ClosureTable& cl, const std::vector<std::size_t>& order, std::vector<signed char>& val) {
  for (std::size_t k : order) {
    const Formula& f = cl.formula(k);
    switch (f.kind()) {
      case Kind::Bot:
        val[k] = 0;
        break;
      case Kind::Neg: {
        signed char v = val[cl.sub_indices(k)[0]];
        val[k] = v < 0 ? -1 : static_cast<signed char>(1 - v);
        break;
      }
      case Kind::And: {
        signed char a = val[cl.sub_indices(k)[0]], b = val[cl.sub_indices(k)[1]];
        val[k] = (a == 0 || b == 0) ? 0 : (a == 1 && b == 1) ? 1 : -1;
        break;
      }
      default:
        break;  // modal atoms keep their assignment
    }
  }
}

}  // namespace

std::vector<Sequent> all_types(const ClosureTable& cl) {
  require_plain(cl, true);
  const auto& free = cl.modal_atoms();
  std::vector<signed char> val(cl.size(), -1);
  const std::vector<std::size_t> order = bottom_up_order(cl);
  std::vector<Sequent> out;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    evaluate(cl, order, val);
    if (val[cl.psi_index()] == 0) return;
    if (k == free.size()) {
      Sequent s = cl.empty_sequent();
      for (std::size_t i = 0; i < cl.size(); ++i)
        if (val[i] == 1) s.set(i);
      out.push_back(std::move(s));
      return;
    }
    for (signed char b : {1, 0}) {
      val[free[k]] = b;
      self(self, k + 1);
    }
    val[free[k]] = -1;
  };
  rec(rec, 0);
  return out;
}

bool is_type(const Sequent& s, const ClosureTable& cl) {
  if (!s.test(cl.psi_index())) return false;
  for (std::size_t k = 0; k < cl.size(); ++k) {
    const Formula& f = cl.formula(k);
    bool has = s.test(k);
    if (f.kind() == Kind::Bot && has) return false;
    if (f.kind() == Kind::Neg && has == s.test(cl.sub_indices(k)[0])) return false;
    if (f.kind() == Kind::And && has != (s.test(cl.sub_indices(k)[0]) && s.test(cl.sub_indices(k)[1]))) return false;
  }
  return true;
}

std::vector<Sequent> elim_step(const std::vector<Sequent>& s, const ClosureTable& cl, OneStepSolver& solver,
                               std::vector<OneStepResult>* witnesses) {
  std::vector<Sequent> out;
  if (witnesses) witnesses->clear();
  for (const auto& gamma : s) {
    OneStepResult r = solver.solve(pair_for_type(gamma, s, cl));
    if (r.verdict == Verdict::Unknown) throw BackendIncomplete(cl.render(gamma));
    if (r.verdict == Verdict::Sat) {
      out.push_back(gamma);
      if (witnesses) witnesses->push_back(std::move(r));
    }
  }
  return out;
}

ElimRun eliminate(std::vector<Sequent> start, const ClosureTable& cl, OneStepSolver& solver) {
  ElimRun run;
  run.survivors = std::move(start);
  for (;;) {
    ++run.rounds;
    std::vector<OneStepResult> w;
    std::vector<Sequent> next = elim_step(run.survivors, cl, solver, &w);
    if (next.size() == run.survivors.size()) {
      run.witnesses = std::move(w);
      return run;
    }
    run.survivors = std::move(next);
  }
}

Model extract_model(const std::vector<Sequent>& survivors, const std::vector<OneStepResult>& witnesses,
                    const ClosureTable& cl, Logic logic) {
  if (witnesses.size() != survivors.size()) throw std::invalid_argument("extract_model: missing witness");
  Model m(model_kind(logic), survivors.size());
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    label_state(m, i, survivors[i], cl);
    if (witnesses[i].verdict != Verdict::Sat) throw std::invalid_argument("extract_model: missing witness");
    for (const auto& [row, w] : witnesses[i].witness) add_weight(m, logic, i, row, w);
  }
  return m;
}

Decision decide_elim(const Formula& psi, const Formula& phi0, Logic logic, const ElimOptions& opt) {
  ClosureTable cl(psi, phi0);
  require_plain(cl);
  OneStepSolver solver(logic, opt.budget);
  Decision d;
  try {
    std::vector<Sequent> types = all_types(cl);
    d.stats["types"] = types.size();
    ElimRun run = eliminate(std::move(types), cl, solver);
    d.stats["rounds"] = run.rounds;
    d.stats["survivors"] = run.survivors.size();
    d.verdict = Verdict::Unsat;
    for (std::size_t i = 0; i < run.survivors.size(); ++i) {
      if (!run.survivors[i].test(cl.phi0_index())) continue;
      d.verdict = Verdict::Sat;
      d.root = i;
      if (opt.extract) {
        Model m = extract_model(run.survivors, run.witnesses, cl, logic);
        verify_model(m, cl, run.survivors[i], i);
        d.model = std::move(m);
      }
      break;
    }
  } catch (const BackendIncomplete& e) {
    d.verdict = Verdict::Unknown;
    d.reason = e.what();
  }
  d.stats["solver_calls"] = solver.stats().calls;
  d.stats["backend_calls"] = solver.stats().backend_calls;
  return d;
}

}  // namespace coalgsat
