#pragma once

#include <cstddef>
#include <vector>

#include "coalgsat/lp.hpp"
#include "coalgsat/polynomial.hpp"

namespace coalgsat {

enum class PolyRel { Ge, Gt, Eq, Lt, Le };

struct PolyConstraint {
  Polynomial poly;
  PolyRel rel;  // poly REL 0
};

// Polynomial constraints over variables x_0..x_{n-1}. When `simplex` is set the
// implicit constraints x >= 0 and sum x <= 1 apply.
struct PolySystem {
  std::size_t num_vars = 0;
  std::vector<PolyConstraint> constraints;
  bool simplex = true;
};

enum class RealVerdict { Sat, Unsat, Unknown };

// A pruned box together with the constraint that refutes it on the box
// (SIZE_MAX for the simplex bound sum x <= 1).
struct PrunedBox {
  std::vector<Interval> box;
  std::size_t constraint;
};

struct RealResult {
  RealVerdict verdict = RealVerdict::Unknown;
  std::vector<Rat> point;
  // Filled by poly_feasible for Unsat answers when certificates are requested.
  std::vector<PrunedBox> certificate;
};

bool constraint_holds(const PolyConstraint& c, const std::vector<Rat>& x);
bool satisfies(const PolySystem& sys, const std::vector<Rat>& x);
bool is_linear(const PolySystem& sys);

// Complete decision for systems of total degree at most 1.
RealResult lin_feasible(const PolySystem& sys);

struct PolyBudget {
  unsigned max_depth = 24;
  std::size_t max_boxes = 200000;
  bool certificate = false;
};

// Dyadic branch-and-prune over the unit box with exact interval evaluation.
// Sat only with an exactly verified rational point; Unknown when the budget runs out.
RealResult poly_feasible(const PolySystem& sys, const PolyBudget& budget = {});

// Re-checks an Unsat certificate: every box is refuted by interval evaluation,
// the boxes do not overlap, and their volumes add up to the unit box.
bool check_certificate(const PolySystem& sys, const std::vector<PrunedBox>& cert);

// Linear systems go to lin_feasible, everything else to poly_feasible.
RealResult real_feasible(const PolySystem& sys, const PolyBudget& budget = {});

}  // namespace coalgsat
