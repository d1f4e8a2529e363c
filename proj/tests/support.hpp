#pragma once

#include <algorithm>
#include <ostream>
#include <random>
#include <vector>

#include "qf/core/matrix.hpp"
#include "qf/core/rational.hpp"

namespace qf::test {

// Small random rationals p/q with |p| <= max_num, 1 <= q <= max_den.
inline Rational random_rational(std::mt19937_64& rng, long max_num = 9, long max_den = 5) {
  std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline std::vector<Rational> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> v(n);
  for (auto& x : v) x = random_rational(rng);
  return v;
}

inline RMatrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  RMatrix m({0, rows}, {0, cols});
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m.local(i, j) = random_rational(rng);
  return m;
}

// Max over all sign vectors s of ||M s||_inf.
inline Rational sign_vector_norm(const RMatrix& m) {
  const Index c = m.num_cols();
  Rational best = 0;
  for (Index mask = 0; mask < (Index{1} << c); ++mask) {
    std::vector<Rational> s(c);
    for (Index j = 0; j < c; ++j) s[j] = (mask >> j) & 1 ? -1 : 1;
    Rational v = m.apply(WindowVector(m.col_window().lo, s)).sup_norm();
    if (v > best) best = v;
  }
  return best;
}

}  // namespace qf::test

#include "qf/geom/extension.hpp"

namespace qf::test {

// h near-indicator vectors in l_inf^n: indicator of a block of coordinates,
// plus perturbations of size <= 1/8 on a few coordinates outside the block.
inline std::vector<WindowVector> near_indicators(std::mt19937_64& rng, Index n, Index h) {
  std::vector<Index> perm(n);
  for (Index i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<WindowVector> out;
  Index per = n / h;
  std::uniform_int_distribution<int> small(-1, 1), coin(0, 3);
  for (Index k = 0; k < h; ++k) {
    WindowVector v = WindowVector::zeros({0, n});
    Index len = 1 + static_cast<Index>(rng() % per);
    for (Index t = 0; t < len; ++t) v[perm[k * per + t]] = 1;
    for (Index i = 0; i < n; ++i)
      if (v[i] == 0 && coin(rng) == 0) v[i] = frac(small(rng), 8);
    out.push_back(v);
  }
  return out;
}

struct ExtensionInstance {
  geom::LinMap t;
};

inline ExtensionInstance extension_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> hd(1, 3);
  Index h = hd(rng);
  std::uniform_int_distribution<Index> nd(std::max<Index>(h * h, 2 * h), 12);
  Index n = nd(rng);
  geom::Subspace y1({0, n}, near_indicators(rng, n, h));
  return {geom::LinMap(y1, Window{0, n}, near_indicators(rng, n, h))};
}

}  // namespace qf::test

namespace qf {

inline void PrintTo(const WindowVector& v, std::ostream* os) {
  *os << "[" << v.lo() << ":";
  for (const auto& c : v.coords()) *os << " " << to_string(c);
  *os << "]";
}

}  // namespace qf
