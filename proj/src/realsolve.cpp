#include "coalgsat/realsolve.hpp"

#include <cstdint>
#include <deque>
#include <stdexcept>

namespace coalgsat {

bool constraint_holds(const PolyConstraint& c, const std::vector<Rat>& x) {
  Rat v = c.poly.evaluate(x);
  switch (c.rel) {
    case PolyRel::Ge:
      return v >= 0;
    case PolyRel::Gt:
      return v > 0;
    case PolyRel::Eq:
      return v == 0;
    case PolyRel::Lt:
      return v < 0;
    case PolyRel::Le:
      return v <= 0;
  }
  return false;
}

bool satisfies(const PolySystem& sys, const std::vector<Rat>& x) {
  if (x.size() != sys.num_vars) return false;
  if (sys.simplex) {
    Rat sum = 0;
    for (const auto& v : x) {
      if (v < 0) return false;
      sum += v;
    }
    if (sum > 1) return false;
  }
  for (const auto& c : sys.constraints)
    if (!constraint_holds(c, x)) return false;
  return true;
}

bool is_linear(const PolySystem& sys) {
  for (const auto& c : sys.constraints)
    if (c.poly.degree() > 1) return false;
  return true;
}

RealResult lin_feasible(const PolySystem& sys) {
  if (!is_linear(sys)) throw std::invalid_argument("lin_feasible on a non-linear system");
  const std::size_t n = sys.num_vars;
  std::vector<LinRow> rows;
  for (const auto& c : sys.constraints) {
    if (c.poly.arity() > n) throw std::invalid_argument("constraint refers to unknown variable");
    LinRow r{std::vector<Rat>(n), RowRel::Ge, -c.poly.constant_term()};
    for (std::size_t j = 0; j < n; ++j) r.coeffs[j] = c.poly.linear_coefficient(static_cast<std::uint32_t>(j));
    switch (c.rel) {
      case PolyRel::Ge:
        r.rel = RowRel::Ge;
        break;
      case PolyRel::Gt:
        r.rel = RowRel::Gt;
        break;
      case PolyRel::Eq:
        r.rel = RowRel::Eq;
        break;
      case PolyRel::Lt:
        r.rel = RowRel::Lt;
        break;
      case PolyRel::Le:
        r.rel = RowRel::Le;
        break;
    }
    rows.push_back(std::move(r));
  }
  if (sys.simplex) rows.push_back(LinRow{std::vector<Rat>(n, Rat(1)), RowRel::Le, Rat(1)});
  LinFeasibility f = lp_feasible(n, rows);
  RealResult out;
  out.verdict = f.feasible ? RealVerdict::Sat : RealVerdict::Unsat;
  if (f.feasible) {
    out.point = std::move(f.point);
    if (!satisfies(sys, out.point)) throw std::logic_error("linear solver produced an invalid point");
  }
  return out;
}

namespace {

// Interval infeasibility: the constraint cannot hold anywhere in the box.
bool refuted(const PolyConstraint& c, const Interval& v) {
  switch (c.rel) {
    case PolyRel::Ge:
      return v.hi < 0;
    case PolyRel::Gt:
      return v.hi <= 0;
    case PolyRel::Eq:
      return v.lo > 0 || v.hi < 0;
    case PolyRel::Lt:
      return v.lo >= 0;
    case PolyRel::Le:
      return v.lo > 0;
  }
  return false;
}

constexpr std::size_t kNotRefuted = SIZE_MAX - 1;

std::size_t refuting_constraint(const PolySystem& sys, const std::vector<Interval>& box) {
  if (sys.simplex) {
    Rat lo_sum = 0;
    for (const auto& i : box) lo_sum += i.lo;
    if (lo_sum > 1) return SIZE_MAX;
  }
  for (std::size_t k = 0; k < sys.constraints.size(); ++k)
    if (refuted(sys.constraints[k], sys.constraints[k].poly.evaluate(box))) return k;
  return kNotRefuted;
}

struct Box {
  std::vector<Interval> iv;
  unsigned depth = 0;
};

}  // namespace

RealResult poly_feasible(const PolySystem& sys, const PolyBudget& budget) {
  const std::size_t n = sys.num_vars;
  for (const auto& c : sys.constraints)
    if (c.poly.arity() > n) throw std::invalid_argument("constraint refers to unknown variable");
  RealResult out;
  std::deque<Box> queue;
  queue.push_back(Box{std::vector<Interval>(n, Interval{Rat(0), Rat(1)}), 0});
  std::size_t processed = 0;
  bool exhausted = false;
  while (!queue.empty()) {
    Box box = std::move(queue.front());
    queue.pop_front();
    if (++processed > budget.max_boxes) {
      exhausted = true;
      break;
    }
    std::size_t why = refuting_constraint(sys, box.iv);
    if (why != kNotRefuted) {
      if (budget.certificate) out.certificate.push_back(PrunedBox{box.iv, why});
      continue;
    }

    // Candidate points: the center, then the vertices.
    std::vector<Rat> center(n);
    for (std::size_t j = 0; j < n; ++j) center[j] = (box.iv[j].lo + box.iv[j].hi) / 2;
    if (satisfies(sys, center)) {
      out.verdict = RealVerdict::Sat;
      out.point = std::move(center);
      return out;
    }
    if (n <= 12) {
      std::vector<Rat> vertex(n);
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        for (std::size_t j = 0; j < n; ++j) vertex[j] = (mask >> j & 1) ? box.iv[j].hi : box.iv[j].lo;
        if (satisfies(sys, vertex)) {
          out.verdict = RealVerdict::Sat;
          out.point = vertex;
          return out;
        }
      }
    }

    if (n == 0) continue;  // the single point failed
    if (box.depth >= budget.max_depth) {
      exhausted = true;
      continue;
    }
    std::size_t widest = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (box.iv[j].hi - box.iv[j].lo > box.iv[widest].hi - box.iv[widest].lo) widest = j;
    Rat mid = (box.iv[widest].lo + box.iv[widest].hi) / 2;
    Box left = box, right = std::move(box);
    left.iv[widest].hi = mid;
    right.iv[widest].lo = mid;
    ++left.depth;
    ++right.depth;
    queue.push_back(std::move(left));
    queue.push_back(std::move(right));
  }
  out.verdict = exhausted ? RealVerdict::Unknown : RealVerdict::Unsat;
  if (exhausted) out.certificate.clear();
  return out;
}

bool check_certificate(const PolySystem& sys, const std::vector<PrunedBox>& cert) {
  const std::size_t n = sys.num_vars;
  Rat volume = 0;
  for (std::size_t a = 0; a < cert.size(); ++a) {
    const auto& b = cert[a].box;
    if (b.size() != n) return false;
    if (cert[a].constraint == SIZE_MAX) {
      if (!sys.simplex) return false;
      Rat lo_sum = 0;
      for (const auto& i : b) lo_sum += i.lo;
      if (lo_sum <= 1) return false;
    } else {
      if (cert[a].constraint >= sys.constraints.size()) return false;
      const auto& c = sys.constraints[cert[a].constraint];
      if (!refuted(c, c.poly.evaluate(b))) return false;
    }
    Rat v = 1;
    for (const auto& i : b) {
      if (i.lo < 0 || i.hi > 1 || i.lo >= i.hi) return false;
      v *= i.hi - i.lo;
    }
    volume += v;
    for (std::size_t o = 0; o < a; ++o) {
      bool disjoint = false;
      for (std::size_t j = 0; j < n && !disjoint; ++j)
        disjoint = cert[o].box[j].hi <= b[j].lo || b[j].hi <= cert[o].box[j].lo;
      if (!disjoint && n > 0) return false;
    }
  }
  return n == 0 ? !cert.empty() : volume == 1;
}

RealResult real_feasible(const PolySystem& sys, const PolyBudget& budget) {
  return is_linear(sys) ? lin_feasible(sys) : poly_feasible(sys, budget);
}

}  // namespace coalgsat
