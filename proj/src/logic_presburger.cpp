#include "coalgsat/logic_presburger.hpp"

#include <stdexcept>

namespace coalgsat {

PresburgerReduction reduce_presburger(const OneStepPair& pair) {
  PresburgerReduction red;
  const std::size_t n = pair.constraint.size();
  red.base.num_vars = n;
  for (const auto& lit : pair.clause) {
    const Formula& op = lit.op;
    if (op.kind() == Kind::Atom || op.kind() == Kind::Nominal) continue;
    if (op.kind() != Kind::Presburger)
      throw std::invalid_argument("reduce_presburger: non-Presburger modality " + render(op));
    IntRow row{std::vector<Int>(n, Int(0)), op.rel(), op.bound(), op.modulus()};
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t i = 0; i < lit.vars.size(); ++i)
        if (pair.constraint[r][lit.vars[i]]) row.coeffs[r] += op.coefficients()[i];
    if (lit.positive) {
      red.base.rows.push_back(std::move(row));
      continue;
    }
    switch (op.rel()) {
      case Rel::Lt:  // s >= v, i.e. s > v - 1
        row.rel = Rel::Gt;
        row.bound -= 1;
        red.base.rows.push_back(std::move(row));
        break;
      case Rel::Gt:  // s <= v, i.e. s < v + 1
        row.rel = Rel::Lt;
        row.bound += 1;
        red.base.rows.push_back(std::move(row));
        break;
      case Rel::Eq: {
        IntRow above = row, below = row;
        above.rel = Rel::Gt;
        below.rel = Rel::Lt;
        red.alternatives.push_back({above, below});
        break;
      }
      case Rel::Mod: {
        std::vector<IntRow> group;
        for (Int r = 1; r < op.modulus(); ++r) {
          IntRow alt = row;
          alt.bound = mod_floor(op.bound() + r, op.modulus());
          group.push_back(std::move(alt));
        }
        red.alternatives.push_back(std::move(group));
        break;
      }
    }
  }
  return red;
}

namespace {

bool search(const PresburgerReduction& red, std::size_t group, IntConstraintSystem& sys, std::vector<Int>& out) {
  if (group == red.alternatives.size()) {
    auto x = feasible(sys);
    if (!x) return false;
    out = std::move(*x);
    return true;
  }
  for (const auto& row : red.alternatives[group]) {
    sys.rows.push_back(row);
    bool ok = search(red, group + 1, sys, out);
    sys.rows.pop_back();
    if (ok) return true;
  }
  return false;
}

}  // namespace

OneStepResult solve_presburger(const OneStepPair& pair) {
  OneStepResult res;
  if (!nullary_consistent(pair)) return res;
  PresburgerReduction red = reduce_presburger(pair);
  IntConstraintSystem sys = red.base;
  std::vector<Int> x;
  if (!search(red, 0, sys, x)) return res;
  res.verdict = Verdict::Sat;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) res.witness.emplace_back(i, Rat(x[i]));
  return res;
}

}  // namespace coalgsat
