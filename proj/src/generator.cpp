#include "coalgsat/generator.hpp"

#include "coalgsat/closure.hpp"

namespace coalgsat {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Formula leaf(std::mt19937_64& rng, const GenOptions& opt) {
  int total = static_cast<int>(opt.atoms.size() + opt.nominals.size());
  int pick = uniform(rng, 0, total + 1);
  if (pick == total) return top();
  if (pick == total + 1) return bot();
  if (pick < static_cast<int>(opt.atoms.size())) return atom(opt.atoms[pick]);
  return nominal(opt.nominals[pick - opt.atoms.size()]);
}

Formula gen(std::mt19937_64& rng, const GenOptions& opt, unsigned depth);

Formula modal(std::mt19937_64& rng, const GenOptions& opt, unsigned depth) {
  switch (opt.logic) {
    case Logic::K:
      return diamond(gen(rng, opt, depth - 1));
    case Logic::Presburger: {
      std::vector<std::pair<Int, Formula>> terms;
      int n = uniform(rng, 1, 2);
      for (int i = 0; i < n; ++i) {
        int c = uniform(rng, -opt.coeff_range, opt.coeff_range);
        if (c == 0) c = 1;
        terms.emplace_back(Int(c), gen(rng, opt, depth - 1));
      }
      int r = uniform(rng, 0, 3);
      if (r == 3 && opt.max_modulus >= 2) {
        int k = uniform(rng, 2, opt.max_modulus);
        return presburger(std::move(terms), Rel::Mod, Int(uniform(rng, 0, k - 1)), Int(k));
      }
      Rel rel = r == 0 ? Rel::Lt : (r == 1 ? Rel::Gt : Rel::Eq);
      return presburger(std::move(terms), rel, Int(uniform(rng, -1, 2)));
    }
    case Logic::Prob: {
      static const Rat coeffs[] = {Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(-1, 2)};
      static const Rat consts[] = {Rat(0), Rat(-1, 2), Rat(-1, 3), Rat(1, 4), Rat(-1, 4), Rat(1, 2)};
      std::vector<Formula> args;
      Polynomial p = Polynomial::constant(consts[uniform(rng, 0, 5)]);
      int n = uniform(rng, 1, 2);
      for (int i = 0; i < n; ++i) {
        args.push_back(gen(rng, opt, depth - 1));
        p += Polynomial::variable(static_cast<std::uint32_t>(i)).scaled(coeffs[uniform(rng, 0, 5)]);
      }
      if (opt.nonlinear && n == 2 && uniform(rng, 0, 2) == 0)
        p += (Polynomial::variable(0) * Polynomial::variable(1)).scaled(coeffs[uniform(rng, 0, 5)]);
      return prob(p, std::move(args));
    }
  }
  return bot();
}

Formula gen(std::mt19937_64& rng, const GenOptions& opt, unsigned depth) {
  if (depth == 0) return leaf(rng, opt);
  int choice = uniform(rng, 0, opt.hybrid_ops ? 8 : 6);
  switch (choice) {
    case 0:
      return leaf(rng, opt);
    case 1:
    case 2:
      return neg(gen(rng, opt, depth - 1));
    case 3:
      return conj(gen(rng, opt, depth - 1), gen(rng, opt, depth - 1));
    case 4:
    case 5:
    case 6:
      return modal(rng, opt, depth);
    case 7:
      if (!opt.nominals.empty())
        return sat(opt.nominals[uniform(rng, 0, static_cast<int>(opt.nominals.size()) - 1)],
                   gen(rng, opt, depth - 1));
      return neg(gen(rng, opt, depth - 1));
    default:
      return univ(gen(rng, opt, depth - 1));
  }
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, const GenOptions& opt) { return gen(rng, opt, opt.max_depth); }

Problem random_problem(std::mt19937_64& rng, const GenOptions& opt, std::size_t max_closure) {
  GenOptions small = opt;
  while (true) {
    small.max_depth = static_cast<unsigned>(uniform(rng, 0, 2));
    Formula psi = uniform(rng, 0, 2) == 0 ? top() : random_formula(rng, small);
    small.max_depth = static_cast<unsigned>(uniform(rng, 1, static_cast<int>(opt.max_depth)));
    Formula goal = random_formula(rng, small);
    if (ClosureTable(psi, goal).size() <= max_closure) return Problem{psi, goal};
  }
}

}  // namespace coalgsat
