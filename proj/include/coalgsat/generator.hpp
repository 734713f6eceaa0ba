#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "coalgsat/formula.hpp"
#include "coalgsat/logic.hpp"

namespace coalgsat {

struct GenOptions {
  Logic logic = Logic::K;
  std::vector<std::string> atoms{"p", "q"};
  std::vector<std::string> nominals;
  unsigned max_depth = 3;
  int coeff_range = 3;      // Presburger coefficients in [-coeff_range, coeff_range]
  int max_modulus = 3;      // congruence moduli in [2, max_modulus]
  bool nonlinear = false;   // allow products of weights
  bool hybrid_ops = false;  // allow @ and A
};

Formula random_formula(std::mt19937_64& rng, const GenOptions& opt);

// A global assumption and a goal.
struct Problem {
  Formula assumption;
  Formula goal;
};

// Random problem whose closure has at most `max_closure` members.
Problem random_problem(std::mt19937_64& rng, const GenOptions& opt, std::size_t max_closure = 12);

}  // namespace coalgsat
