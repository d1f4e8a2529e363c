#include "qf/core/polytope.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "qf/core/lp.hpp"
#include "qf/core/matrix.hpp"

namespace qf {

DimensionCapExceeded::DimensionCapExceeded(std::size_t dim, std::size_t cap)
    : std::runtime_error("dimension " + std::to_string(dim) + " exceeds vertex cap " +
                         std::to_string(cap)) {}

namespace {

bool point_less(const Point& x, const Point& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

Rational dot(const Point& x, const Point& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0 && y[i] != 0) s += x[i] * y[i];
  return s;
}

// Combinations of k out of m, in lexicographic order.
template <class F>
void for_each_subset(std::size_t m, std::size_t k, F&& f) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Point> dedupe_rows(const std::vector<Point>& rows, std::vector<std::size_t>* origin,
                               std::vector<int>* sign) {
  std::vector<Point> out;
  std::set<Point, decltype(&point_less)> seen(&point_less);
  if (origin) origin->clear();
  if (sign) sign->clear();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Point& r = rows[k];
    auto lead = std::find_if(r.begin(), r.end(), [](const Rational& x) { return x != 0; });
    if (lead == r.end()) continue;
    Point canon = r;
    if (*lead < 0)
      for (auto& x : canon) x = -x;
    if (!seen.insert(canon).second) continue;
    out.push_back(std::move(canon));
    if (origin) origin->push_back(k);
    if (sign) sign->push_back(*lead < 0 ? -1 : 1);
  }
  return out;
}

std::vector<Point> vertex_enumerate(const std::vector<Point>& constraints, std::size_t dim,
                                    std::size_t cap) {
  if (dim > cap) throw DimensionCapExceeded(dim, cap);
  if (dim == 0) return {Point{}};
  std::vector<Point> rows = dedupe_rows(constraints, nullptr);
  if (rank(rows, dim) < dim) throw Unbounded();
  std::set<Point, decltype(&point_less)> found(&point_less);
  for_each_subset(rows.size(), dim, [&](const std::vector<std::size_t>& sub) {
    std::vector<std::vector<Rational>> a;
    for (std::size_t i : sub) a.push_back(rows[i]);
    for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
      std::vector<Rational> rhs(dim);
      for (std::size_t i = 0; i < dim; ++i) rhs[i] = (mask >> i) & 1 ? -1 : 1;
      auto c = solve_square(a, rhs);
      if (!c) return;  // singular subset
      bool feasible = true;
      for (const auto& row : rows)
        if (rabs(dot(row, *c)) > 1) {
          feasible = false;
          break;
        }
      if (feasible) found.insert(*c);
    }
  });
  return {found.begin(), found.end()};
}

BallMax ball_max_linear(const std::vector<Point>& constraints, const Point& q, std::size_t dim) {
  std::vector<std::size_t> origin;
  std::vector<Point> rows = dedupe_rows(constraints, &origin);
  // Equalities: sum_i u_i a_i = q, one per coordinate.
  std::vector<std::vector<Rational>> eq(dim, std::vector<Rational>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t d = 0; d < dim; ++d) eq[d][i] = rows[i][d];
  try {
    L1Solution s = lp_min_l1(eq, q, rows.size());
    BallMax out{s.value, s.dual};
    return out;
  } catch (const Infeasible&) {
    throw Unbounded();
  }
}

BallMaxRows ball_max_rows(const std::vector<Point>& constraints, const std::vector<Point>& rows,
                          std::size_t dim) {
  BallMaxRows best{Rational(0), Point(dim), 0};
  std::vector<std::size_t> origin;
  std::vector<Point> uniq = dedupe_rows(rows, &origin);
  for (std::size_t k = 0; k < uniq.size(); ++k) {
    BallMax m = ball_max_linear(constraints, uniq[k], dim);
    if (m.value > best.value) best = {m.value, m.argmax, origin[k]};
  }
  return best;
}

BallMaxRows ball_max_rows_vertex(const std::vector<Point>& constraints,
                                 const std::vector<Point>& rows, std::size_t dim,
                                 std::size_t cap) {
  BallMaxRows best{Rational(0), Point(dim), 0};
  for (const Point& v : vertex_enumerate(constraints, dim, cap))
    for (std::size_t k = 0; k < rows.size(); ++k) {
      Rational val = rabs(dot(rows[k], v));
      if (val > best.value) best = {val, v, k};
    }
  return best;
}

}  // namespace qf
