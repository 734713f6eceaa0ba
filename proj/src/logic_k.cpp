#include <stdexcept>

#include "coalgsat/onestep.hpp"

namespace coalgsat {

// For every positive diamond pick the first valuation that makes its variable
// true and every negatively boxed variable false; those valuations form the
// successor set.
OneStepResult solve_k(const OneStepPair& pair) {
  OneStepResult res;
  if (!nullary_consistent(pair)) return res;
  std::vector<std::size_t> positive, negative;
  for (const auto& lit : pair.clause) {
    if (lit.op.kind() == Kind::Atom || lit.op.kind() == Kind::Nominal) continue;
    if (lit.op.kind() != Kind::Diamond) throw std::invalid_argument("solve_k: non-K modality " + render(lit.op));
    (lit.positive ? positive : negative).push_back(lit.vars[0]);
  }
  std::vector<bool> chosen(pair.constraint.size(), false);
  for (std::size_t a : positive) {
    bool found = false;
    for (std::size_t i = 0; i < pair.constraint.size() && !found; ++i) {
      const auto& val = pair.constraint[i];
      if (!val[a]) continue;
      bool ok = true;
      for (std::size_t b : negative) ok = ok && !val[b];
      if (ok) {
        found = true;
        chosen[i] = true;
      }
    }
    if (!found) return res;
  }
  res.verdict = Verdict::Sat;
  for (std::size_t i = 0; i < chosen.size(); ++i)
    if (chosen[i]) res.witness.emplace_back(i, Rat(1));
  return res;
}

}  // namespace coalgsat
