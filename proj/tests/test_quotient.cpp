#include <gtest/gtest.h>

#include "qf/quotient/tail_vector.hpp"
#include "qf/quotient/windows.hpp"
#include "support.hpp"

using namespace qf;
using namespace qf::quotient;

namespace {

std::vector<Rational> rs(std::initializer_list<long> xs) {
  return std::vector<Rational>(xs.begin(), xs.end());
}

TailVector tv(std::initializer_list<long> prefix, std::initializer_list<long> period) {
  return TailVector(rs(prefix), rs(period));
}

// y = sum c_k f_k as a TailVector.
TailVector combo(const std::vector<TailVector>& fs, const std::vector<Rational>& c) {
  TailVector y({}, rs({0}));
  for (std::size_t k = 0; k < fs.size(); ++k) y = y + fs[k] * c[k];
  return y;
}

// Coefficient grid {-g..g}/g in dimension 2.
std::vector<std::vector<Rational>> grid2(long g) {
  std::vector<std::vector<Rational>> out;
  for (long a = -g; a <= g; ++a)
    for (long b = -g; b <= g; ++b)
      if (a || b) out.push_back({frac(a, g), frac(b, g)});
  return out;
}

Rational prefix_norm(const TailVector& y, Index n) {
  Rational m = 0;
  for (Index i = 0; i < n; ++i) m = std::max(m, rabs(y.at(i)));
  return m;
}

}  // namespace

TEST(TailVector, QuotientNormExamples) {
  EXPECT_EQ(quotient_norm(tv({}, {1, -1})), 1);
  EXPECT_EQ(quotient_norm(tv({100, 100}, {0})), 0);
  EXPECT_EQ(quotient_norm(tv({0, 0, 0}, {1, 0, 0})), 1);
}

TEST(TailVector, TailNormsDecreaseToQuotientNorm) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    TailVector f(test::random_vector(rng, 4), test::random_vector(rng, 3));
    for (Index k = 0; k < 8; ++k) {
      EXPECT_GE(f.tail_sup_norm(k), quotient_norm(f));
      if (k >= f.prefix_length()) EXPECT_EQ(f.tail_sup_norm(k), quotient_norm(f));
    }
    TailVector g(test::random_vector(rng, 2), test::random_vector(rng, 2));
    EXPECT_LE(quotient_norm(f + g), quotient_norm(f) + quotient_norm(g));
  }
  EXPECT_TRUE(tv({5}, {0, 0}).eventually_zero());
}

TEST(TailVector, CanonicalAndEquality) {
  TailVector a = tv({1, 0, 1}, {0, 1, 0, 1});
  TailVector c = a.canonical();
  EXPECT_EQ(c.prefix(), rs({}));
  EXPECT_EQ(c.period(), rs({1, 0}));
  TailVector b = tv({5, 1, 0}, {1, 0, 1, 0});
  EXPECT_EQ(b.canonical().prefix(), rs({5}));
  EXPECT_EQ(b.canonical().period(), rs({1, 0}));
  EXPECT_EQ(a, c);
  for (Index i = 0; i < 20; ++i) EXPECT_EQ(a.at(i), c.at(i));
  EXPECT_TRUE(equal_mod_c0(tv({7, 7}, {1, 2}), tv({}, {1, 2})));
  EXPECT_FALSE(equal_mod_c0(tv({}, {1, 2}), tv({}, {1, 2, 1})));
}

TEST(TailVector, JsonRoundTrip) {
  TailVector a(rs({1, 2}), {frac(1, 3), frac(-2, 5)});
  EXPECT_EQ(tail_from(tail_json(a)), a);
}

TEST(Lifting, EvensIndicator) {
  auto w = lifting_index(make_span({tv({}, {1, 0})}), frac(1, 10));
  EXPECT_EQ(w.n, 0);
}

TEST(Lifting, PrefixOnlyNotInjective) {
  EXPECT_THROW(lifting_index(make_span({tv({1}, {0})}), frac(1, 10)), NotInjective);
}

TEST(Lifting, PerturbedDisjointProgressions) {
  std::vector<TailVector> fs{tv({3, 0, 0}, {1, 0}), tv({0, 0, 2}, {0, 1})};
  Rational eps(1, 2);
  auto w = lifting_index(make_span(fs), eps);
  EXPECT_EQ(w.n, 1);
  bool violated_before = false;
  for (const auto& c : grid2(6)) {
    TailVector y = combo(fs, c);
    EXPECT_LE((1 - eps) * y.tail_sup_norm(w.n), quotient_norm(y));
    if ((1 - eps) * y.tail_sup_norm(w.n - 1) > quotient_norm(y)) violated_before = true;
  }
  EXPECT_TRUE(violated_before);
}

TEST(Restriction, ConstantTail) {
  EXPECT_EQ(restriction_index(make_span({tv({}, {1})}), frac(1, 10)).n, 1);
}

TEST(Restriction, UnitVectorAtFive) {
  EXPECT_EQ(restriction_index(make_span({tv({0, 0, 0, 0, 0, 1}, {0})}), frac(1, 10)).n, 6);
}

TEST(Restriction, MixedSpanAgainstGrid) {
  std::vector<TailVector> fs{tv({0, 1, 0, 0}, {0, 1, 0}), tv({2, 0, 0, 3}, {1})};
  Rational eps(1, 5);
  auto w = restriction_index(make_span(fs), eps);
  for (const auto& c : grid2(8)) {
    TailVector y = combo(fs, c);
    EXPECT_LE((1 - eps) * y.sup_norm(), prefix_norm(y, w.n));
  }
  bool violated_before = false;
  for (const auto& c : grid2(8)) {
    TailVector y = combo(fs, c);
    if ((1 - eps) * y.sup_norm() > prefix_norm(y, w.n - 1)) violated_before = true;
  }
  EXPECT_TRUE(violated_before);
}

TEST(Section, SingletonNormalized) {
  EXPECT_EQ(pi_section_norm({tv({1, 0, 0, 1}, {1, 0})}, 0), 1);
}

TEST(Section, DisjointIndicators) {
  EXPECT_EQ(pi_section_norm({tv({}, {1, 0, 0}), tv({}, {0, 1, 0}), tv({0, 0}, {1, 0, 0})}, 0), 1);
}

TEST(Section, PerturbedPairAgainstGrid) {
  std::vector<TailVector> fs{tv({2, 0, 1}, {1, 0}), tv({1, 1, 0}, {0, 1})};
  Rational v = pi_section_norm(fs, 0);
  EXPECT_GE(v, 1);
  Rational grid_best = 0;
  for (const auto& c : grid2(6)) {
    TailVector y = combo(fs, c);
    grid_best = std::max(grid_best, Rational(y.sup_norm() / quotient_norm(y)));
  }
  EXPECT_LE(grid_best, v);
  EXPECT_EQ(v, 3);  // c = (1, 1) at coordinate 0
  EXPECT_EQ(pi_section_norm(fs, 3), 1);
}

TEST(ROperator, SingletonIsometry) {
  std::vector<TailVector> fs{tv({0, 1}, {1, 0, 0})};
  EXPECT_EQ(r_operator_inverse_norm(fs, 2, 5), 1);
  auto r = r_operator(fs, 2, 5);
  EXPECT_EQ(geom::lower_bound(r).value, 1);
}

TEST(ROperator, NotInvertibleWhenWindowMisses) {
  std::vector<TailVector> fs{tv({}, {0, 1})};
  EXPECT_THROW(r_operator_inverse_norm(fs, 0, 1), NotInvertible);
}

TEST(ROperator, InverseNormDecreasesWithCut) {
  std::vector<TailVector> fs{tv({}, {1, 1, 0, 1}), tv({}, {0, 1, 1, 1})};
  Rational prev;
  bool first = true;
  for (Index n2 : {2, 3, 4, 6, 8}) {
    Rational v = r_operator_inverse_norm(fs, 0, n2);
    EXPECT_GE(v, 1);
    if (!first) EXPECT_LE(v, prev);
    prev = v;
    first = false;
  }
  EXPECT_EQ(prev, 1);
}
