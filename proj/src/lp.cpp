#include "coalgsat/lp.hpp"

#include <stdexcept>

namespace coalgsat {

namespace {

// Dense tableau in canonical form: each row i has basic variable basis[i] with
// a unit column. The last column holds the right-hand side.
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // excluding rhs
  std::vector<std::vector<Rat>> t;
  std::vector<std::size_t> basis;

  Rat& rhs(std::size_t i) { return t[i][cols]; }

  void pivot(std::size_t r, std::size_t c) {
    Rat p = t[r][c];
    for (auto& v : t[r]) v /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rat f = t[i][c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Maximizes cost . x; columns with allowed[c] == false never enter.
  LpStatus maximize(const std::vector<Rat>& cost, const std::vector<bool>& allowed) {
    while (true) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols && enter == cols; ++j) {
        if (!allowed[j]) continue;
        Rat reduced = cost[j];
        for (std::size_t i = 0; i < rows; ++i)
          if (t[i][j] != 0) reduced -= cost[basis[i]] * t[i][j];
        if (reduced > 0) enter = j;
      }
      if (enter == cols) return LpStatus::Optimal;
      std::size_t leave = rows;
      Rat best;
      for (std::size_t i = 0; i < rows; ++i) {
        if (t[i][enter] <= 0) continue;
        Rat ratio = t[i][cols] / t[i][enter];
        if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  Rat value(const std::vector<Rat>& cost) const {
    Rat v = 0;
    for (std::size_t i = 0; i < rows; ++i) v += cost[basis[i]] * t[i][cols];
    return v;
  }
};

}  // namespace

LpSolution lp_maximize(std::size_t n, const std::vector<LinRow>& rows, const std::vector<Rat>& objective) {
  const std::size_t m = rows.size();
  std::size_t slacks = 0;
  for (const auto& r : rows) {
    if (r.coeffs.size() != n) throw std::invalid_argument("row width does not match variable count");
    if (r.rel == RowRel::Lt || r.rel == RowRel::Gt) throw std::invalid_argument("strict row passed to lp_maximize");
    if (r.rel != RowRel::Eq) ++slacks;
  }
  // Columns: originals [0,n), slacks [n, n+slacks), artificials [n+slacks, n+slacks+m).
  Tableau tb;
  tb.rows = m;
  tb.cols = n + slacks + m;
  tb.t.assign(m, std::vector<Rat>(tb.cols + 1));
  tb.basis.assign(m, 0);
  std::size_t s = n;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = rows[i];
    for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = r.coeffs[j];
    if (r.rel == RowRel::Le) tb.t[i][s++] = 1;
    if (r.rel == RowRel::Ge) tb.t[i][s++] = -1;
    tb.t[i][tb.cols] = r.rhs;
    if (r.rhs < 0)
      for (auto& v : tb.t[i]) v = -v;
    tb.t[i][n + slacks + i] = 1;
    tb.basis[i] = n + slacks + i;
  }

  std::vector<Rat> phase1(tb.cols);
  for (std::size_t i = 0; i < m; ++i) phase1[n + slacks + i] = -1;
  std::vector<bool> allowed(tb.cols, true);
  tb.maximize(phase1, allowed);
  LpSolution out;
  if (tb.value(phase1) < 0) return out;

  // Drive zero-valued artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (tb.basis[i] < n + slacks) continue;
    for (std::size_t j = 0; j < n + slacks; ++j)
      if (tb.t[i][j] != 0) {
        tb.pivot(i, j);
        break;
      }
  }
  for (std::size_t j = n + slacks; j < tb.cols; ++j) allowed[j] = false;

  std::vector<Rat> cost(tb.cols);
  for (std::size_t j = 0; j < n && j < objective.size(); ++j) cost[j] = objective[j];
  LpStatus st = tb.maximize(cost, allowed);
  out.status = st;
  out.x.assign(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (tb.basis[i] < n) out.x[tb.basis[i]] = tb.t[i][tb.cols];
  out.value = tb.value(cost);
  return out;
}

bool row_holds(const LinRow& row, const std::vector<Rat>& x) {
  Rat lhs = 0;
  for (std::size_t j = 0; j < row.coeffs.size(); ++j)
    if (row.coeffs[j] != 0) lhs += row.coeffs[j] * x[j];
  switch (row.rel) {
    case RowRel::Le:
      return lhs <= row.rhs;
    case RowRel::Ge:
      return lhs >= row.rhs;
    case RowRel::Eq:
      return lhs == row.rhs;
    case RowRel::Lt:
      return lhs < row.rhs;
    case RowRel::Gt:
      return lhs > row.rhs;
  }
  return false;
}

LinFeasibility lp_feasible(std::size_t n, const std::vector<LinRow>& rows) {
  bool strict = false;
  for (const auto& r : rows) strict = strict || r.rel == RowRel::Lt || r.rel == RowRel::Gt;
  LinFeasibility out;
  if (!strict) {
    LpSolution sol = lp_maximize(n, rows, {});
    if (sol.status == LpStatus::Infeasible) return out;
    out.feasible = true;
    out.point = std::move(sol.x);
    return out;
  }
  // Extra column n is epsilon.
  std::vector<LinRow> ext;
  ext.reserve(rows.size() + 1);
  for (const auto& r : rows) {
    LinRow e{r.coeffs, r.rel, r.rhs};
    e.coeffs.push_back(0);
    if (r.rel == RowRel::Lt) {
      e.coeffs[n] = 1;
      e.rel = RowRel::Le;
    } else if (r.rel == RowRel::Gt) {
      e.coeffs[n] = -1;
      e.rel = RowRel::Ge;
    }
    ext.push_back(std::move(e));
  }
  LinRow cap{std::vector<Rat>(n + 1), RowRel::Le, Rat(1)};
  cap.coeffs[n] = 1;
  ext.push_back(std::move(cap));
  std::vector<Rat> obj(n + 1);
  obj[n] = 1;
  LpSolution sol = lp_maximize(n + 1, ext, obj);
  if (sol.status != LpStatus::Optimal || sol.value <= 0) return out;
  out.feasible = true;
  out.point.assign(sol.x.begin(), sol.x.begin() + static_cast<long>(n));
  return out;
}

}  // namespace coalgsat
