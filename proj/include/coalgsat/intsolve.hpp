#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "coalgsat/formula.hpp"
#include "coalgsat/numeric.hpp"

namespace coalgsat {

// sum_j coeffs[j] * x_j REL bound (with `modulus` for congruence rows).
struct IntRow {
  std::vector<Int> coeffs;
  Rel rel = Rel::Eq;
  Int bound;
  Int modulus;
};

// Conjunctive system over non-negative integer variables.
struct IntConstraintSystem {
  std::size_t num_vars = 0;
  std::vector<IntRow> rows;
};

// Equations A x = b over non-negative integers. Variables past
// `original_vars` are slacks introduced by normalization.
struct EqSystem {
  std::size_t original_vars = 0;
  std::size_t num_vars = 0;
  std::vector<std::vector<Int>> a;
  std::vector<Int> b;
};

// Rewrites every row as an equation: s > v becomes s - y = v + 1, s < v becomes
// s + y = v - 1, and s = v (mod k) branches into s - k*y = v and s + k*y = v.
// One EqSystem per combination of congruence branches.
std::vector<EqSystem> normalize(const IntConstraintSystem& sys);

// Per-variable bound n * (m * a)^(2m + 1) on some solution, if any exists
// (a = largest absolute entry of A and b, m rows, n columns).
Int solution_bound(const EqSystem& eq);

struct IntSolveStats {
  std::size_t branches = 0;
  std::size_t lp_calls = 0;
};

// Non-negative integer solution of an equational system, if any.
std::optional<std::vector<Int>> solve_equations(const EqSystem& eq, IntSolveStats* stats = nullptr);

// Complete decision for a conjunctive system. The returned assignment satisfies
// every row and has been support-minimized by greedy zeroing.
std::optional<std::vector<Int>> feasible(const IntConstraintSystem& sys, IntSolveStats* stats = nullptr);

bool row_holds(const IntRow& row, const std::vector<Int>& x);
bool satisfies(const IntConstraintSystem& sys, const std::vector<Int>& x);

}  // namespace coalgsat
