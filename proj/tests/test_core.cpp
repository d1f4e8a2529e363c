#include <gtest/gtest.h>

#include <set>

#include "qf/core/json_io.hpp"
#include "qf/core/lp.hpp"
#include "qf/core/matrix.hpp"
#include "qf/core/polytope.hpp"
#include "support.hpp"

using namespace qf;

namespace {

Rational R(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::vector<std::vector<Rational>> rows(std::initializer_list<std::initializer_list<long>> r) {
  std::vector<std::vector<Rational>> out;
  for (auto& row : r) {
    std::vector<Rational> v;
    for (long x : row) v.push_back(x);
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(Rational, CanonicalString) {
  EXPECT_EQ(to_string(R(2, 4)), "1/2");
  EXPECT_EQ(to_string(R(-3)), "-3/1");
  EXPECT_EQ(parse_rational("-6/4"), R(-3, 2));
  EXPECT_EQ(parse_rational("7"), R(7));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
}

TEST(OpNorm, Identity) { EXPECT_EQ(op_norm_inf(RMatrix::identity({0, 3})), 1); }

TEST(OpNorm, RowSums) { EXPECT_EQ(op_norm_inf(RMatrix::from_rows(rows({{1, -2}, {0, 3}}))), 3); }

TEST(OpNorm, EmptyIsZero) { EXPECT_EQ(op_norm_inf(RMatrix({0, 0}, {0, 0})), 0); }

TEST(OpNorm, MatchesSignVectorOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    RMatrix m = test::random_matrix(rng, 4, 4);
    EXPECT_EQ(op_norm_inf(m), test::sign_vector_norm(m));
  }
}

TEST(OpNorm, AttainedBySignOfMaximizingRow) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    RMatrix m = test::random_matrix(rng, 3, 5);
    Index r = *op_norm_row(m);
    std::vector<Rational> s(5);
    for (Index j = 0; j < 5; ++j) s[j] = m(r, j) < 0 ? -1 : 1;
    WindowVector v(0, s);
    EXPECT_EQ(m.apply(v).sup_norm(), op_norm_inf(m));
    WindowVector x(0, test::random_vector(rng, 5));
    EXPECT_LE(m.apply(x).sup_norm(), op_norm_inf(m) * x.sup_norm());
  }
}

TEST(Invert, Diagonal) {
  RMatrix m({0, 2}, {0, 2});
  m(0, 0) = 2;
  m(1, 1) = R(1, 3);
  RMatrix inv = invert(m);
  EXPECT_EQ(inv(0, 0), R(1, 2));
  EXPECT_EQ(inv(1, 1), 3);
  EXPECT_EQ(inv(0, 1), 0);
  EXPECT_EQ(invert(RMatrix::identity({2, 5})), RMatrix::identity({2, 5}));
}

TEST(Invert, RandomSelfCheck) {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    RMatrix m = test::random_matrix(rng, 5, 5).with_windows({3, 8}, {3, 8});
    RMatrix inv = invert(m);
    EXPECT_TRUE((m * inv).is_identity());
    EXPECT_TRUE((inv * m).is_identity());
    ++checked;
  }
  EXPECT_EQ(checked, 30);
}

TEST(Invert, Singular) {
  EXPECT_THROW(invert(RMatrix::from_rows(rows({{1, 2}, {2, 4}}))), Singular);
}

TEST(BlockCompose, TwoScalars) {
  RMatrix a({0, 1}, {0, 1}), b({1, 2}, {1, 2});
  a(0, 0) = 2;
  b(1, 1) = 3;
  RMatrix m = block_compose({a, b}, BlockLayout({0, 1, 2}));
  EXPECT_EQ(m(0, 0), 2);
  EXPECT_EQ(m(1, 1), 3);
  EXPECT_EQ(m(0, 1), 0);
  EXPECT_EQ(op_norm_inf(m), 3);
}

TEST(BlockCompose, NormIsMaxOfBlocks) {
  std::mt19937_64 rng(14);
  BlockLayout layout({0, 2, 5, 6});
  std::vector<RMatrix> blocks;
  Rational best = 0;
  for (std::size_t k = 0; k < layout.num_blocks(); ++k) {
    Window w = layout.block(k);
    blocks.push_back(test::random_matrix(rng, w.size(), w.size()).with_windows(w, w));
    best = std::max(best, op_norm_inf(blocks.back()));
  }
  EXPECT_EQ(op_norm_inf(block_compose(blocks, layout)), best);
  EXPECT_EQ(block_compose({blocks[0]}, BlockLayout({0, 2})), blocks[0]);
  EXPECT_THROW(block_compose({blocks[0]}, BlockLayout({0, 3})), DimensionMismatch);
  EXPECT_THROW(BlockLayout({0, 2, 2}), DimensionMismatch);
}

TEST(Lp, IdentitySystem) {
  auto s = lp_min_l1(rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), {R(2), R(-3), R(1, 2)}, 3);
  EXPECT_EQ(s.u, (std::vector<Rational>{R(2), R(-3), R(1, 2)}));
  EXPECT_EQ(s.value, R(11, 2));
}

TEST(Lp, SingleEquality) {
  auto s = lp_min_l1(rows({{1, 1}}), {R(1)}, 2);
  EXPECT_EQ(s.value, 1);
  EXPECT_EQ(s.dual, (std::vector<Rational>{R(1)}));
}

TEST(Lp, Inconsistent) { EXPECT_THROW(lp_min_l1(rows({{1}, {1}}), {R(0), R(1)}, 1), Infeasible); }

TEST(Lp, RedundantRowsAndDualCertificate) {
  auto a = rows({{1, 2, 0, -1}, {2, 4, 0, -2}, {0, 1, 1, 1}});
  std::vector<Rational> b{R(3), R(6), R(-1)};
  auto s = lp_min_l1(a, b, 4);
  Rational bty = 0;
  for (std::size_t i = 0; i < 3; ++i) bty += b[i] * s.dual[i];
  EXPECT_EQ(bty, s.value);
  for (std::size_t j = 0; j < 4; ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < 3; ++i) col += a[i][j] * s.dual[i];
    EXPECT_LE(rabs(col), 1);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < 4; ++j) lhs += a[i][j] * s.u[j];
    EXPECT_EQ(lhs, b[i]);
  }
}

// Minimum of ||u||_1 over basic feasible solutions of the split problem.
static Rational basic_solution_min(const std::vector<std::vector<Rational>>& a,
                                   const std::vector<Rational>& b, std::size_t n) {
  std::size_t m = a.size();
  Rational best = -1;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if ((mask >> j) & 1) cols.push_back(j);
    if (cols.size() != m) continue;
    std::vector<std::vector<Rational>> sq(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) sq[i][k] = a[i][cols[k]];
    auto x = solve_square(sq, b);
    if (!x) continue;
    Rational v = 0;
    for (auto& xi : *x) v += rabs(xi);
    if (best < 0 || v < best) best = v;
  }
  return best;
}

TEST(Lp, MatchesBasicSolutionEnumeration) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 4, m = 1 + trial % 3;
    std::vector<std::vector<Rational>> a(m);
    for (auto& r : a) r = test::random_vector(rng, n);
    auto b = test::random_vector(rng, m);
    if (rank(a, n) < m) continue;
    EXPECT_EQ(lp_min_l1(a, b, n).value, basic_solution_min(a, b, n));
  }
}

TEST(Vertices, Square) {
  auto v = vertex_enumerate({{R(1), R(0)}, {R(0), R(1)}}, 2);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0], (Point{R(-1), R(-1)}));
  EXPECT_EQ(v[3], (Point{R(1), R(1)}));
}

TEST(Vertices, Segment) {
  auto v = vertex_enumerate({{R(1)}}, 1);
  EXPECT_EQ(v, (std::vector<Point>{{R(-1)}, {R(1)}}));
}

TEST(Vertices, UnboundedAndCap) {
  EXPECT_THROW(vertex_enumerate({{R(1), R(1)}}, 2), Unbounded);
  EXPECT_THROW(vertex_enumerate({}, 7), DimensionCapExceeded);
}

TEST(Vertices, RandomDim3AgainstTripleOracle) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Point> cons;
    for (int i = 0; i < 5; ++i) cons.push_back(test::random_vector(rng, 3));
    if (rank(cons, 3) < 3) continue;
    auto verts = vertex_enumerate(cons, 3);
    // Oracle: intersect every triple of hyperplanes <a_i, c> = +-1, keep the feasible points.
    std::set<Point> oracle;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        for (int k = j + 1; k < 5; ++k)
          for (int s = 0; s < 8; ++s) {
            auto x = solve_square({cons[i], cons[j], cons[k]},
                                  {R(s & 1 ? -1 : 1), R(s & 2 ? -1 : 1), R(s & 4 ? -1 : 1)});
            if (!x) continue;
            bool ok = true;
            for (auto& a : cons) {
              Rational d = 0;
              for (int t = 0; t < 3; ++t) d += a[t] * (*x)[t];
              if (rabs(d) > 1) ok = false;
            }
            if (ok) oracle.insert(*x);
          }
    EXPECT_EQ(verts, std::vector<Point>(oracle.begin(), oracle.end()));
  }
}

TEST(BallMax, LpMatchesVertices) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> cons, obj;
    for (int i = 0; i < 5; ++i) cons.push_back(test::random_vector(rng, 3));
    for (int i = 0; i < 3; ++i) obj.push_back(test::random_vector(rng, 3));
    if (rank(cons, 3) < 3) continue;
    auto lp = ball_max_rows(cons, obj, 3);
    auto vx = ball_max_rows_vertex(cons, obj, 3);
    EXPECT_EQ(lp.value, vx.value);
    for (auto& a : cons) {
      Rational d = 0;
      for (int t = 0; t < 3; ++t) d += a[t] * lp.argmax[t];
      EXPECT_LE(rabs(d), 1);
    }
  }
}

TEST(Json, RoundTrip) {
  std::mt19937_64 rng(18);
  RMatrix m = test::random_matrix(rng, 2, 3).with_windows({4, 6}, {1, 4});
  EXPECT_EQ(matrix_from(matrix_json(m)), m);
  EXPECT_EQ(matrix_from_sparse(matrix_sparse_json(m)), m);
  WindowVector v(5, test::random_vector(rng, 3));
  EXPECT_EQ(vector_from(vector_json(v)), v);
}
