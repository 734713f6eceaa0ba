#include "coalgsat/onestep.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace coalgsat {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Sat:
      return "sat";
    case Verdict::Unsat:
      return "unsat";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

namespace {

std::size_t arg_index(const ClosureTable& cl, const Formula& arg) {
  long i = cl.index_of(arg);
  if (i < 0) throw std::invalid_argument("modal argument missing from closure: " + render(arg));
  return static_cast<std::size_t>(i);
}

void add_literal(OneStepPair& pair, const Formula& literal) {
  ClauseLiteral lit;
  lit.positive = literal_positive(literal);
  lit.op = literal_atom(literal);
  for (std::size_t p = 0; p < lit.op.children().size(); ++p) {
    lit.vars.push_back(pair.variables.size());
    pair.variables.push_back(StepVar{literal, p, lit.op.child(p)});
  }
  pair.clause.push_back(std::move(lit));
}

}  // namespace

OneStepPair pair_for_type(const Sequent& gamma, const std::vector<Sequent>& types, const ClosureTable& cl) {
  OneStepPair pair;
  for (std::size_t a : cl.modal_atoms()) {
    std::size_t na = cl.nneg_index(a);
    if (gamma.test(a)) {
      add_literal(pair, cl.formula(a));
    } else if (gamma.test(na)) {
      add_literal(pair, cl.formula(na));
    } else {
      throw std::invalid_argument("not a type: neither " + render(cl.formula(a)) + " nor its negation");
    }
  }
  std::vector<std::size_t> var_arg;
  for (const auto& v : pair.variables) var_arg.push_back(arg_index(cl, v.arg));
  for (const auto& delta : types) {
    Valuation val(pair.variables.size());
    for (std::size_t j = 0; j < val.size(); ++j) val[j] = delta.test(var_arg[j]);
    pair.origin.push_back(pair.constraint.size());
    pair.constraint.push_back(std::move(val));
  }
  return pair;
}

OneStepPair pair_for_state(const Sequent& gamma, const std::vector<Sequent>& children, const ClosureTable& cl) {
  OneStepPair pair;
  for_each_member(gamma, [&](std::size_t i) {
    const Formula& f = cl.formula(i);
    if (!is_modal_literal(f)) throw std::invalid_argument("not a state: " + render(f));
    add_literal(pair, f);
  });
  std::vector<std::size_t> pos, negi;
  for (const auto& v : pair.variables) {
    std::size_t a = arg_index(cl, v.arg);
    pos.push_back(a);
    negi.push_back(cl.nneg_index(a));
  }
  for (std::size_t c = 0; c < children.size(); ++c) {
    const Sequent& delta = children[c];
    Valuation val(pair.variables.size());
    bool clash = false;
    for (std::size_t j = 0; j < val.size(); ++j) {
      bool p = delta.test(pos[j]), n = delta.test(negi[j]);
      if (!p && !n)
        throw std::invalid_argument("malformed child " + cl.render(delta) + ": undecided " +
                                    render(pair.variables[j].arg));
      clash = clash || (p && n);
      val[j] = p;
    }
    if (clash) continue;
    pair.origin.push_back(c);
    pair.constraint.push_back(std::move(val));
  }
  return pair;
}

bool nullary_consistent(const OneStepPair& pair) {
  std::set<std::pair<Formula, bool>> seen;
  for (const auto& lit : pair.clause) {
    if (!lit.op.children().empty()) continue;
    if (seen.count({lit.op, !lit.positive})) return false;
    seen.insert({lit.op, lit.positive});
  }
  return true;
}

Rat variable_measure(const OneStepPair& pair, const OneStepResult& result, std::size_t var) {
  Rat sum = 0;
  for (const auto& [idx, w] : result.witness)
    if (pair.constraint[idx][var]) sum += w;
  return sum;
}

bool check_witness(const OneStepPair& pair, const OneStepResult& result, Logic logic) {
  if (result.verdict != Verdict::Sat) return false;
  Rat total = 0;
  for (const auto& [idx, w] : result.witness) {
    if (idx >= pair.constraint.size()) return false;
    if (w < 0) return false;
    if (logic == Logic::Presburger && !is_integral(w)) return false;
    total += w;
  }
  if (logic == Logic::Prob && total > 1) return false;
  if (!nullary_consistent(pair)) return false;
  for (const auto& lit : pair.clause) {
    const Formula& op = lit.op;
    bool holds = true;
    switch (op.kind()) {
      case Kind::Atom:
      case Kind::Nominal:
        continue;
      case Kind::Diamond:
        if (logic != Logic::K) return false;
        holds = variable_measure(pair, result, lit.vars[0]) > 0;
        break;
      case Kind::Presburger: {
        if (logic != Logic::Presburger) return false;
        Int s = 0;
        for (std::size_t i = 0; i < lit.vars.size(); ++i)
          s += op.coefficients()[i] * variable_measure(pair, result, lit.vars[i]).get_num();
        switch (op.rel()) {
          case Rel::Lt:
            holds = s < op.bound();
            break;
          case Rel::Gt:
            holds = s > op.bound();
            break;
          case Rel::Eq:
            holds = s == op.bound();
            break;
          case Rel::Mod:
            holds = mod_floor(s - op.bound(), op.modulus()) == 0;
            break;
        }
        break;
      }
      case Kind::Prob: {
        if (logic != Logic::Prob) return false;
        std::vector<Rat> point;
        for (std::size_t v : lit.vars) point.push_back(variable_measure(pair, result, v));
        holds = op.polynomial().evaluate(point) >= 0;
        break;
      }
      default:
        return false;
    }
    if (holds != lit.positive) return false;
  }
  return true;
}

namespace {

std::string operator_shape(const Formula& op) {
  switch (op.kind()) {
    case Kind::Atom:
      return "a" + op.name();
    case Kind::Nominal:
      return "n" + op.name();
    case Kind::Diamond:
      return "D";
    case Kind::Presburger: {
      std::string s = "P";
      for (const auto& c : op.coefficients()) s += c.get_str() + ",";
      s += std::to_string(static_cast<int>(op.rel())) + "," + op.bound().get_str() + "," + op.modulus().get_str();
      return s;
    }
    case Kind::Prob: {
      std::string s = "W";
      for (const auto& [m, c] : op.polynomial().terms()) {
        for (const auto& [v, e] : m) s += std::to_string(v) + "^" + std::to_string(e) + ".";
        s += ":" + to_string(c) + ";";
      }
      return s;
    }
    default:
      return "?" + render(op);
  }
}

}  // namespace

OneStepResult OneStepSolver::dispatch(const OneStepPair& pair) {
  ++stats_.backend_calls;
  switch (logic_) {
    case Logic::K:
      return solve_k(pair);
    case Logic::Presburger:
      return solve_presburger(pair);
    case Logic::Prob:
      return solve_prob(pair, budget_);
  }
  throw std::logic_error("unknown logic");
}

OneStepResult OneStepSolver::solve(const OneStepPair& pair) {
  ++stats_.calls;
  // Canonical form: sorted distinct valuations; remember one original index for each.
  std::map<Valuation, std::size_t> first_index;
  for (std::size_t i = 0; i < pair.constraint.size(); ++i) first_index.emplace(pair.constraint[i], i);
  OneStepPair canon;
  canon.variables = pair.variables;
  canon.clause = pair.clause;
  std::vector<std::size_t> back;
  for (const auto& [val, idx] : first_index) {
    canon.constraint.push_back(val);
    back.push_back(idx);
  }

  std::string key;
  if (memoize_) {
    for (const auto& lit : canon.clause) {
      key += lit.positive ? '+' : '-';
      key += operator_shape(lit.op);
      key += '(';
      for (std::size_t v : lit.vars) key += std::to_string(v) + ",";
      key += ')';
    }
    key += '|';
    for (const auto& val : canon.constraint) {
      for (bool b : val) key += b ? '1' : '0';
      key += ';';
    }
  }

  OneStepResult res;
  auto it = memoize_ ? cache_.find(key) : cache_.end();
  if (it != cache_.end()) {
    ++stats_.cache_hits;
    res = it->second;
  } else {
    res = dispatch(canon);
    if (memoize_) cache_.emplace(std::move(key), res);
  }
  if (res.verdict == Verdict::Unknown) ++stats_.unknowns;

  OneStepResult out;
  out.verdict = res.verdict;
  for (const auto& [idx, w] : res.witness)
    if (w != 0) out.witness.emplace_back(back[idx], w);
  if (out.verdict == Verdict::Sat && !check_witness(pair, out, logic_))
    throw std::logic_error("one-step witness failed verification");
  return out;
}

}  // namespace coalgsat
