#include "coalgsat/intsolve.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "coalgsat/lp.hpp"

namespace coalgsat {

std::vector<EqSystem> normalize(const IntConstraintSystem& sys) {
  std::size_t slack_count = 0;
  std::size_t mod_rows = 0;
  for (const auto& r : sys.rows) {
    if (r.coeffs.size() != sys.num_vars) throw std::invalid_argument("row width does not match variable count");
    if (r.rel != Rel::Eq) ++slack_count;
    if (r.rel == Rel::Mod) ++mod_rows;
  }
  if (mod_rows > 20) throw std::invalid_argument("too many congruence rows");
  std::vector<EqSystem> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << mod_rows); ++mask) {
    EqSystem eq;
    eq.original_vars = sys.num_vars;
    eq.num_vars = sys.num_vars + slack_count;
    std::size_t slack = sys.num_vars;
    std::size_t mod_index = 0;
    for (const auto& r : sys.rows) {
      std::vector<Int> row(eq.num_vars, Int(0));
      std::copy(r.coeffs.begin(), r.coeffs.end(), row.begin());
      Int rhs = r.bound;
      switch (r.rel) {
        case Rel::Eq:
          break;
        case Rel::Gt:
          row[slack++] = -1;
          rhs += 1;
          break;
        case Rel::Lt:
          row[slack++] = 1;
          rhs -= 1;
          break;
        case Rel::Mod: {
          bool plus = (mask >> mod_index++) & 1;
          row[slack++] = plus ? r.modulus : Int(-r.modulus);
          break;
        }
      }
      eq.a.push_back(std::move(row));
      eq.b.push_back(std::move(rhs));
    }
    out.push_back(std::move(eq));
  }
  return out;
}

Int solution_bound(const EqSystem& eq) {
  Int a = 1;
  for (const auto& row : eq.a)
    for (const auto& v : row) a = std::max(a, Int(abs(v)));
  for (const auto& v : eq.b) a = std::max(a, Int(abs(v)));
  const unsigned long m = eq.a.size();
  Int base = a * Int(m);
  Int p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), 2 * m + 1);
  return Int(static_cast<unsigned long>(std::max<std::size_t>(eq.num_vars, 1))) * p;
}

namespace {

// All integer solutions of A x = b as x0 + K t (t integral), via column
// operations bringing A to echelon form while tracking the unimodular transform.
struct Lattice {
  std::vector<Int> x0;
  std::vector<std::vector<Int>> k;  // n rows, d columns
  std::size_t dims = 0;
};

std::optional<Lattice> integer_lattice(const EqSystem& eq) {
  const std::size_t m = eq.a.size();
  const std::size_t n = eq.num_vars;
  std::vector<std::vector<Int>> h = eq.a;
  std::vector<std::vector<Int>> u(n, std::vector<Int>(n, Int(0)));
  for (std::size_t j = 0; j < n; ++j) u[j][j] = 1;

  auto col_axpy = [&](std::size_t dst, std::size_t src, const Int& f) {  // col[dst] -= f * col[src]
    for (std::size_t i = 0; i < m; ++i) h[i][dst] -= f * h[i][src];
    for (std::size_t i = 0; i < n; ++i) u[i][dst] -= f * u[i][src];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < m; ++i) std::swap(h[i][a], h[i][b]);
    for (std::size_t i = 0; i < n; ++i) std::swap(u[i][a], u[i][b]);
  };
  auto col_negate = [&](std::size_t c) {
    for (std::size_t i = 0; i < m; ++i) h[i][c] = -h[i][c];
    for (std::size_t i = 0; i < n; ++i) u[i][c] = -u[i][c];
  };

  std::vector<long> pivot_col(m, -1);
  std::size_t col = 0;
  for (std::size_t i = 0; i < m && col < n; ++i) {
    for (std::size_t c = col + 1; c < n; ++c) {
      while (h[i][c] != 0) {
        Int q = h[i][col] / h[i][c];  // truncating division
        col_axpy(col, c, q);
        col_swap(col, c);
      }
    }
    if (h[i][col] == 0) continue;
    if (h[i][col] < 0) col_negate(col);
    pivot_col[i] = static_cast<long>(col);
    ++col;
  }

  std::vector<Int> z(n, Int(0));
  for (std::size_t i = 0; i < m; ++i) {
    Int residual = eq.b[i];
    for (std::size_t j = 0; j < n; ++j)
      if (static_cast<long>(j) != pivot_col[i] && h[i][j] != 0) residual -= h[i][j] * z[j];
    if (pivot_col[i] < 0) {
      if (residual != 0) return std::nullopt;
      continue;
    }
    const Int& p = h[i][static_cast<std::size_t>(pivot_col[i])];
    if (!mpz_divisible_p(residual.get_mpz_t(), p.get_mpz_t())) return std::nullopt;
    z[static_cast<std::size_t>(pivot_col[i])] = residual / p;
  }

  Lattice lat;
  lat.dims = n - col;
  lat.x0.assign(n, Int(0));
  lat.k.assign(n, std::vector<Int>(lat.dims, Int(0)));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < col; ++j) lat.x0[r] += u[r][j] * z[j];
    for (std::size_t j = col; j < n; ++j) lat.k[r][j - col] = u[r][j];
  }
  return lat;
}

struct BranchBound {
  std::size_t var;
  bool upper;  // t_var <= value, else t_var >= value
  Int value;
};

}  // namespace

namespace {

// Bounds lo <= k . t <= hi on t-space, where x_r = x0_r + g * (k . t) and
// k is the primitive direction of row r of the lattice basis.
struct TRow {
  std::size_t var;
  std::vector<Int> k;
  Int g;
  Int lo;
  Int hi;
};

LinRow split_row(const std::vector<Int>& k, RowRel rel, const Int& rhs) {
  const std::size_t d = k.size();
  std::vector<Rat> coeffs(2 * d);
  for (std::size_t j = 0; j < d; ++j) {
    coeffs[j] = k[j];
    coeffs[d + j] = -k[j];
  }
  return LinRow{std::move(coeffs), rel, Rat(rhs)};
}

}  // namespace

std::optional<std::vector<Int>> solve_equations(const EqSystem& eq, IntSolveStats* stats) {
  const std::size_t n = eq.num_vars;
  if (eq.a.empty()) return std::vector<Int>(n, Int(0));
  const Int bound = solution_bound(eq);

  // Tighten bounds to the lattice and pin variables that the relaxation forces
  // to their lower bound, until the relaxation is full-dimensional in t-space.
  EqSystem cur = eq;
  std::vector<bool> pinned(n, false);
  std::optional<Lattice> lat;
  std::vector<TRow> trows;
  while (true) {
    lat = integer_lattice(cur);
    if (!lat) return std::nullopt;
    const std::size_t d = lat->dims;
    trows.clear();
    for (std::size_t r = 0; r < n; ++r) {
      Int g = 0;
      for (const auto& v : lat->k[r]) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Int(abs(v)).get_mpz_t());
      const Int& x0 = lat->x0[r];
      if (g == 0) {
        if (x0 < 0 || x0 > bound) return std::nullopt;
        continue;
      }
      TRow tr{r, {}, g, ceil_of(Rat(-x0, g)), floor_of(Rat(bound - x0, g))};
      for (const auto& v : lat->k[r]) tr.k.push_back(v / g);
      if (tr.lo > tr.hi) return std::nullopt;
      trows.push_back(std::move(tr));
    }
    if (d == 0) return lat->x0;

    std::vector<LinRow> rows;
    for (const auto& tr : trows) {
      rows.push_back(split_row(tr.k, RowRel::Ge, tr.lo));
      rows.push_back(split_row(tr.k, RowRel::Le, tr.hi));
    }
    // A row seen above its lower bound at any relaxation point cannot be forced.
    std::vector<bool> loose(trows.size(), false);
    auto mark_loose = [&](const LpSolution& sol) {
      if (sol.status != LpStatus::Optimal) return;
      for (std::size_t i = 0; i < trows.size(); ++i) {
        Rat v = 0;
        for (std::size_t j = 0; j < d; ++j) v += Rat(trows[i].k[j]) * (sol.x[j] - sol.x[d + j]);
        if (v > Rat(trows[i].lo)) loose[i] = true;
      }
    };
    std::vector<Rat> all(2 * d);
    for (const auto& tr : trows)
      for (std::size_t j = 0; j < d; ++j) {
        all[j] += tr.k[j];
        all[d + j] -= tr.k[j];
      }
    if (stats) ++stats->lp_calls;
    LpSolution first = lp_maximize(2 * d, rows, all);
    if (first.status == LpStatus::Infeasible) return std::nullopt;
    mark_loose(first);

    bool changed = false;
    for (std::size_t i = 0; i < trows.size(); ++i) {
      const auto& tr = trows[i];
      if (pinned[tr.var] || loose[i]) continue;
      if (stats) ++stats->lp_calls;
      LpSolution top = lp_maximize(2 * d, rows, split_row(tr.k, RowRel::Eq, Int(0)).coeffs);
      mark_loose(top);
      if (top.status != LpStatus::Optimal || top.value > Rat(tr.lo)) continue;
      std::vector<Int> e(n, Int(0));
      e[tr.var] = 1;
      cur.a.push_back(std::move(e));
      cur.b.push_back(lat->x0[tr.var] + tr.g * tr.lo);
      pinned[tr.var] = true;
      changed = true;
    }
    if (!changed) break;
  }

  // Branch and bound over t, minimizing sum x in each relaxation.
  const std::size_t d = lat->dims;
  std::vector<LinRow> base;
  std::vector<Rat> objective(2 * d);
  for (const auto& tr : trows) {
    base.push_back(split_row(tr.k, RowRel::Ge, tr.lo));
    base.push_back(split_row(tr.k, RowRel::Le, tr.hi));
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < d; ++j) {
      objective[j] -= lat->k[r][j];
      objective[d + j] += lat->k[r][j];
    }

  // Best-first on the relaxation value: DFS can dive through a huge box.
  struct Open {
    Rat value;
    std::size_t seq;
    std::vector<BranchBound> bounds;
    std::vector<Rat> t;
    bool operator<(const Open& o) const { return value != o.value ? value < o.value : seq > o.seq; }
  };
  std::size_t seq = 0;
  std::priority_queue<Open> open;
  auto relax = [&](std::vector<BranchBound> bounds) {
    std::vector<LinRow> rows = base;
    for (const auto& bb : bounds) {
      std::vector<Int> unit(d, Int(0));
      unit[bb.var] = 1;
      rows.push_back(split_row(unit, bb.upper ? RowRel::Le : RowRel::Ge, bb.value));
    }
    if (stats) ++stats->lp_calls;
    LpSolution sol = lp_maximize(2 * d, rows, objective);
    if (sol.status == LpStatus::Infeasible) return;
    std::vector<Rat> t(d);
    for (std::size_t j = 0; j < d; ++j) t[j] = sol.x[j] - sol.x[d + j];
    open.push(Open{sol.value, seq++, std::move(bounds), std::move(t)});
  };
  relax({});
  while (!open.empty()) {
    Open node = open.top();
    open.pop();
    if (stats) ++stats->branches;
    const std::vector<Rat>& t = node.t;
    std::size_t pick = d;
    Rat best_dist;
    for (std::size_t j = 0; j < d; ++j) {
      if (is_integral(t[j])) continue;
      Rat frac = t[j] - Rat(floor_of(t[j]));
      Rat dist = abs(frac - Rat(1, 2));
      if (pick == d || dist < best_dist) {
        pick = j;
        best_dist = dist;
      }
    }
    if (pick == d) {
      std::vector<Int> x(n);
      for (std::size_t r = 0; r < n; ++r) {
        x[r] = lat->x0[r];
        for (std::size_t j = 0; j < d; ++j) x[r] += lat->k[r][j] * t[j].get_num();
      }
      return x;
    }
    auto up = node.bounds;
    up.push_back(BranchBound{pick, false, ceil_of(t[pick])});
    auto down = std::move(node.bounds);
    down.push_back(BranchBound{pick, true, floor_of(t[pick])});
    relax(std::move(down));
    relax(std::move(up));
  }
  return std::nullopt;
}

bool row_holds(const IntRow& row, const std::vector<Int>& x) {
  Int s = 0;
  for (std::size_t j = 0; j < row.coeffs.size(); ++j) s += row.coeffs[j] * x[j];
  switch (row.rel) {
    case Rel::Lt:
      return s < row.bound;
    case Rel::Gt:
      return s > row.bound;
    case Rel::Eq:
      return s == row.bound;
    case Rel::Mod:
      return mod_floor(s - row.bound, row.modulus) == 0;
  }
  return false;
}

bool satisfies(const IntConstraintSystem& sys, const std::vector<Int>& x) {
  if (x.size() != sys.num_vars) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  for (const auto& r : sys.rows)
    if (!row_holds(r, x)) return false;
  return true;
}

namespace {

std::optional<std::vector<Int>> feasible_plain(const IntConstraintSystem& sys, IntSolveStats* stats) {
  for (const auto& eq : normalize(sys)) {
    auto x = solve_equations(eq, stats);
    if (x) {
      x->resize(sys.num_vars);
      if (!satisfies(sys, *x)) throw std::logic_error("integer solver produced an invalid assignment");
      return x;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Int>> feasible(const IntConstraintSystem& sys, IntSolveStats* stats) {
  auto x = feasible_plain(sys, stats);
  if (!x) return x;
  // Greedy support minimization: pin a non-zero variable to zero when the rest
  // of the system stays solvable.
  IntConstraintSystem pinned = sys;
  for (std::size_t j = 0; j < sys.num_vars; ++j) {
    if ((*x)[j] == 0) continue;
    IntRow zero{std::vector<Int>(sys.num_vars, Int(0)), Rel::Eq, Int(0), Int(0)};
    zero.coeffs[j] = 1;
    pinned.rows.push_back(zero);
    auto y = feasible_plain(pinned, stats);
    if (y) {
      x = std::move(y);
    } else {
      pinned.rows.pop_back();
    }
  }
  return x;
}

}  // namespace coalgsat
