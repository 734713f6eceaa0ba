#include "coalgsat/decide.hpp"

#include <stdexcept>

#include "coalgsat/caching.hpp"
#include "coalgsat/elim.hpp"
#include "coalgsat/hybrid.hpp"
#include "coalgsat/worklist.hpp"

namespace coalgsat {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "elim") return Algorithm::Elim;
  if (name == "caching") return Algorithm::Caching;
  if (name == "worklist") return Algorithm::Worklist;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Elim:
      return "elim";
    case Algorithm::Caching:
      return "caching";
    case Algorithm::Worklist:
      return "worklist";
  }
  return "?";
}

bool needs_hybrid(const Formula& f) {
  return contains_kind(f, Kind::Nominal) || contains_kind(f, Kind::Sat) || contains_kind(f, Kind::Univ);
}

Decision decide(const Formula& assumption, const Formula& goal, Logic logic, const DecideOptions& opt) {
  Formula psi = adapt(assumption, logic), phi0 = adapt(goal, logic);
  if (opt.hybrid || opt.kripke || needs_hybrid(psi) || needs_hybrid(phi0)) {
    HybridOptions h;
    h.budget = opt.budget;
    h.kripke = opt.kripke;
    h.extract = opt.extract;
    return decide_hybrid(psi, phi0, logic, h);
  }
  switch (opt.algorithm) {
    case Algorithm::Elim: {
      ElimOptions e;
      e.budget = opt.budget;
      e.extract = opt.extract;
      return decide_elim(psi, phi0, logic, e);
    }
    case Algorithm::Caching: {
      CachingOptions c;
      c.budget = opt.budget;
      c.child_cap = opt.child_cap;
      c.extract = opt.extract;
      return decide_caching(psi, phi0, logic, c);
    }
    case Algorithm::Worklist: {
      WorklistOptions w;
      w.budget = opt.budget;
      w.child_cap = opt.child_cap;
      w.extract = opt.extract;
      return decide_worklist(psi, phi0, logic, w);
    }
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace coalgsat
