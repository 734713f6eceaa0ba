#include "coalgsat/logic_prob.hpp"

#include <stdexcept>

namespace coalgsat {

PolySystem reduce_prob(const OneStepPair& pair) {
  PolySystem sys;
  const std::size_t n = pair.constraint.size();
  sys.num_vars = n;
  sys.simplex = true;
  for (const auto& lit : pair.clause) {
    const Formula& op = lit.op;
    if (op.kind() == Kind::Atom || op.kind() == Kind::Nominal) continue;
    if (op.kind() != Kind::Prob) throw std::invalid_argument("reduce_prob: non-probabilistic modality " + render(op));
    std::vector<Polynomial> weights;
    for (std::size_t v : lit.vars) {
      Polynomial w;
      for (std::size_t r = 0; r < n; ++r)
        if (pair.constraint[r][v]) w += Polynomial::variable(static_cast<std::uint32_t>(r));
      weights.push_back(std::move(w));
    }
    sys.constraints.push_back(
        PolyConstraint{op.polynomial().substitute(weights), lit.positive ? PolyRel::Ge : PolyRel::Lt});
  }
  return sys;
}

OneStepResult solve_prob(const OneStepPair& pair, const PolyBudget& budget) {
  OneStepResult res;
  if (!nullary_consistent(pair)) return res;
  RealResult r = real_feasible(reduce_prob(pair), budget);
  switch (r.verdict) {
    case RealVerdict::Unsat:
      return res;
    case RealVerdict::Unknown:
      res.verdict = Verdict::Unknown;
      return res;
    case RealVerdict::Sat:
      break;
  }
  res.verdict = Verdict::Sat;
  for (std::size_t i = 0; i < r.point.size(); ++i)
    if (r.point[i] != 0) res.witness.emplace_back(i, r.point[i]);
  return res;
}

}  // namespace coalgsat
