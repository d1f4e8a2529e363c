#include "qf/core/lp.hpp"

#include <stdexcept>

namespace qf {

L1Solution lp_min_l1(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                     std::size_t n) {
  const std::size_t m = a.size();
  if (b.size() != m) throw std::invalid_argument("lp_min_l1: rhs size mismatch");

  // Row-reduce [A | b | I]; pivots only in the A part.
  const std::size_t width = n + 1 + m;
  std::vector<std::vector<Rational>> g(m, std::vector<Rational>(width));
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("lp_min_l1: row length mismatch");
    for (std::size_t j = 0; j < n; ++j) g[i][j] = a[i][j];
    g[i][n] = b[i];
    g[i][n + 1 + i] = 1;
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && g[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(g[p], g[r]);
    Rational inv = 1 / g[r][c];
    for (auto& x : g[r]) x *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || g[i][c] == 0) continue;
      Rational f = g[i][c];
      for (std::size_t j = c; j < width; ++j)
        if (g[r][j] != 0) g[i][j] -= f * g[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (g[i][n] != 0) throw Infeasible();

  // Make rhs nonnegative; the pivot column (u+ or u-) is then an identity column.
  const std::size_t nv = 2 * n;
  const std::size_t tw = nv + r + 1;  // structural | B^{-1} tracker | rhs
  std::vector<std::vector<Rational>> t(r, std::vector<Rational>(tw));
  std::vector<std::vector<Rational>> e(r, std::vector<Rational>(m));  // reduced rows = e * A
  std::vector<std::size_t> basis(r);
  for (std::size_t i = 0; i < r; ++i) {
    Rational sgn = g[i][n] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      t[i][j] = sgn * g[i][j];
      t[i][n + j] = -t[i][j];
    }
    t[i][nv + i] = 1;
    t[i][tw - 1] = sgn * g[i][n];
    for (std::size_t k = 0; k < m; ++k) e[i][k] = sgn * g[i][n + 1 + k];
    basis[i] = sgn > 0 ? pivot_col[i] : n + pivot_col[i];
  }

  // Reduced costs: d_j = 1 - sum_i c_B(i) t[i][j]; all structural costs are 1.
  std::vector<Rational> d(tw);
  for (std::size_t j = 0; j < nv; ++j) d[j] = 1;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < tw; ++j)
      if (t[i][j] != 0) d[j] -= t[i][j];

  while (true) {
    std::size_t enter = nv;
    for (std::size_t j = 0; j < nv; ++j)
      if (d[j] < 0) {
        enter = j;
        break;
      }
    if (enter == nv) break;
    std::size_t leave = r;
    Rational best;
    for (std::size_t i = 0; i < r; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][tw - 1] / t[i][enter];
      if (leave == r || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == r) throw std::logic_error("lp_min_l1: unbounded l1 objective");
    Rational inv = 1 / t[leave][enter];
    for (auto& x : t[leave]) x *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (std::size_t j = 0; j < tw; ++j)
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
    }
    if (d[enter] != 0) {
      Rational f = d[enter];
      for (std::size_t j = 0; j < tw; ++j)
        if (t[leave][j] != 0) d[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  L1Solution sol;
  sol.u.assign(n, 0);
  sol.value = 0;
  for (std::size_t i = 0; i < r; ++i) {
    const Rational& v = t[i][tw - 1];
    if (basis[i] < n)
      sol.u[basis[i]] += v;
    else
      sol.u[basis[i] - n] -= v;
    sol.value += v;
  }
  // Tracker column k has reduced cost -y_red[k].
  sol.dual.assign(m, 0);
  for (std::size_t k = 0; k < r; ++k) {
    Rational y = -d[nv + k];
    if (y == 0) continue;
    for (std::size_t i = 0; i < m; ++i)
      if (e[k][i] != 0) sol.dual[i] += y * e[k][i];
  }
  return sol;
}

}  // namespace qf
