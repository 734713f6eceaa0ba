#include "coalgsat/logic.hpp"

#include <stdexcept>
#include <unordered_map>

namespace coalgsat {

Logic parse_logic(std::string_view name) {
  if (name == "k" || name == "K") return Logic::K;
  if (name == "presburger") return Logic::Presburger;
  if (name == "prob") return Logic::Prob;
  throw std::invalid_argument("unknown logic: " + std::string(name));
}

std::string logic_name(Logic l) {
  switch (l) {
    case Logic::K:
      return "k";
    case Logic::Presburger:
      return "presburger";
    case Logic::Prob:
      return "prob";
  }
  return "?";
}

Model::Kind model_kind(Logic logic) {
  return logic == Logic::Prob ? Model::Kind::Subdistribution : Model::Kind::Multigraph;
}

namespace {

Formula adapt_rec(const Formula& f, Logic logic, std::unordered_map<Formula, Formula>& memo) {
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  auto sub = [&](std::size_t i) { return adapt_rec(f.child(i), logic, memo); };
  Formula out;
  switch (f.kind()) {
    case Kind::Bot:
    case Kind::Atom:
    case Kind::Nominal:
      out = f;
      break;
    case Kind::Neg:
      out = neg(sub(0));
      break;
    case Kind::And:
      out = conj(sub(0), sub(1));
      break;
    case Kind::Sat:
      out = sat(f.name(), sub(0));
      break;
    case Kind::Univ:
      out = univ(sub(0));
      break;
    case Kind::Diamond:
      if (logic == Logic::K) {
        out = diamond(sub(0));
      } else if (logic == Logic::Presburger) {
        out = presburger({{Int(1), sub(0)}}, Rel::Gt, Int(0));
      } else {
        // w(phi) > 0 is the negation of -w(phi) >= 0.
        out = neg(prob(-Polynomial::variable(0), {sub(0)}));
      }
      break;
    case Kind::Presburger: {
      if (logic != Logic::Presburger) throw std::invalid_argument("#() modality outside Presburger logic");
      std::vector<std::pair<Int, Formula>> terms;
      for (std::size_t i = 0; i < f.children().size(); ++i) terms.emplace_back(f.coefficients()[i], sub(i));
      out = presburger(std::move(terms), f.rel(), f.bound(), f.modulus());
      break;
    }
    case Kind::Prob: {
      if (logic != Logic::Prob) throw std::invalid_argument("w() modality outside probabilistic logic");
      std::vector<Formula> args;
      for (std::size_t i = 0; i < f.children().size(); ++i) args.push_back(sub(i));
      out = prob(f.polynomial(), std::move(args));
      break;
    }
  }
  memo.emplace(f, out);
  return out;
}

}  // namespace

Formula adapt(const Formula& f, Logic logic) {
  std::unordered_map<Formula, Formula> memo;
  return adapt_rec(f, logic, memo);
}

}  // namespace coalgsat
