#include "qf/quotient/windows.hpp"

#include <map>

#include "qf/core/matrix.hpp"

namespace qf::quotient {

TailSpan make_span(const std::vector<TailVector>& vs, Index lcm_cap, Index horizon) {
  TailSpan s;
  s.dim = vs.size();
  Integer L = 1;
  for (const auto& v : vs) {
    s.prefix_length = std::max(s.prefix_length, v.prefix_length());
    L = lcm(L, Integer(static_cast<long>(v.period_length())));
  }
  Index tail_rows;
  if (L <= lcm_cap) {
    s.period_length = L.get_si();
    tail_rows = s.period_length;
  } else {
    if (horizon <= s.prefix_length)
      throw std::invalid_argument("period lcm exceeds cap and no usable horizon was given");
    s.horizon_mode = true;
    s.horizon = horizon;
    s.period_length = horizon - s.prefix_length;
    tail_rows = s.period_length;
  }
  auto row = [&](Index i) {
    Point p;
    for (const auto& v : vs) p.push_back(v.at(i));
    return p;
  };
  for (Index i = 0; i < s.prefix_length; ++i) s.prefix_rows.push_back(row(i));
  for (Index t = 0; t < tail_rows; ++t) s.period_rows.push_back(row(s.prefix_length + t));
  return s;
}

bool pi_injective(const TailSpan& s) { return rank(s.period_rows, s.dim) == s.dim; }

namespace {

// Row maxima over a fixed ball, memoized by row value.
class RowMax {
 public:
  RowMax(const std::vector<Point>& constraints, std::size_t dim)
      : constraints_(constraints), dim_(dim) {}

  Rational operator()(const Point& q) {
    auto it = cache_.find(q);
    if (it != cache_.end()) return it->second;
    Rational v = ball_max_linear(constraints_, q, dim_).value;
    cache_.emplace(q, v);
    return v;
  }

 private:
  const std::vector<Point>& constraints_;
  std::size_t dim_;
  std::map<Point, Rational> cache_;
};

const char* direction_name(LiftDirection d) {
  return d == LiftDirection::TailLift ? "tail-lift" : "prefix-restriction";
}

}  // namespace

Json LiftWindow::json() const {
  Json j{{"n", n},
         {"epsilon", to_string(epsilon)},
         {"direction", direction_name(direction)},
         {"worst", to_string(worst)}};
  if (horizon_mode) j["horizon_mode"] = true;
  return j;
}

LiftWindow lifting_index(const TailSpan& s, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!pi_injective(s)) throw NotInjective();
  const Rational bound = 1 / (1 - epsilon);
  LiftWindow w{0, epsilon, LiftDirection::TailLift, Rational(1), s.horizon_mode};
  if (s.dim == 0) return w;
  RowMax rowmax(s.period_rows, s.dim);
  for (Index i = s.prefix_length - 1; i >= 0; --i) {
    Rational v = rowmax(s.prefix_rows[i]);
    if (v > bound) {
      w.n = i + 1;
      break;
    }
    if (v > w.worst) w.worst = v;
  }
  return w;
}

LiftWindow restriction_index(const TailSpan& s, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) throw std::invalid_argument("epsilon must lie in (0, 1)");
  const Rational bound = 1 / (1 - epsilon);
  std::vector<Point> all = s.prefix_rows;
  all.insert(all.end(), s.period_rows.begin(), s.period_rows.end());
  LiftWindow w{0, epsilon, LiftDirection::PrefixRestriction, Rational(1), s.horizon_mode};
  if (s.dim == 0) return w;
  if (rank(all, s.dim) < s.dim) throw std::invalid_argument("span vectors are dependent");
  std::vector<Point> uniq = dedupe_rows(all, nullptr);
  auto check = [&](Index n, Rational* worst) {
    std::vector<Point> cons(all.begin(), all.begin() + n);
    if (rank(cons, s.dim) < s.dim) return false;
    Rational m = 1;
    for (const auto& q : uniq) {
      Rational v = ball_max_linear(cons, q, s.dim).value;
      if (v > bound) return false;
      if (v > m) m = v;
    }
    *worst = m;
    return true;
  };
  Index lo = 0, hi = static_cast<Index>(all.size());
  Rational worst;
  check(hi, &worst);
  while (lo < hi) {
    Index mid = (lo + hi) / 2;
    Rational wm;
    if (check(mid, &wm)) {
      hi = mid;
      worst = wm;
    } else {
      lo = mid + 1;
    }
  }
  w.n = hi;
  w.worst = worst;
  return w;
}

Rational pi_section_norm(const std::vector<TailVector>& fs, Index n, Index lcm_cap) {
  if (fs.empty()) return 0;
  TailSpan s = make_span(fs, lcm_cap, std::max<Index>(n, 0) + 1024);
  if (!pi_injective(s)) throw NotInjective();
  Rational best = 1;
  RowMax rowmax(s.period_rows, s.dim);
  for (Index i = std::max<Index>(n, 0); i < s.prefix_length; ++i) {
    Rational v = rowmax(s.prefix_rows[i]);
    if (v > best) best = v;
  }
  return best;
}

geom::LinMap r_operator(const std::vector<TailVector>& fs, Index n, Index n2, Index lcm_cap) {
  if (n2 <= n) throw std::invalid_argument("r_operator needs n < n'");
  TailSpan s = make_span(fs, lcm_cap, n2 + 1024);
  const Index L = static_cast<Index>(s.period_rows.size());
  std::vector<WindowVector> basis, images;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    std::vector<Rational> c;
    for (const auto& r : s.period_rows) c.push_back(r[k]);
    basis.emplace_back(0, std::move(c));
    images.push_back(fs[k].window({n, n2}));
  }
  try {
    return geom::LinMap(geom::Subspace({0, L}, std::move(basis)), Window{n, n2}, std::move(images));
  } catch (const geom::NotIndependent&) {
    throw NotInjective();
  }
}

Rational r_operator_inverse_norm(const std::vector<TailVector>& fs, Index n, Index n2,
                                 Index lcm_cap) {
  if (n2 <= n) throw std::invalid_argument("r_operator needs n < n'");
  if (fs.empty()) return 0;
  TailSpan s = make_span(fs, lcm_cap, n2 + 1024);
  if (!pi_injective(s)) throw NotInjective();
  std::vector<Point> rrows;
  for (Index i = n; i < n2; ++i) {
    Point p;
    for (const auto& f : fs) p.push_back(f.at(i));
    rrows.push_back(std::move(p));
  }
  if (rank(rrows, s.dim) < s.dim)
    throw NotInvertible("restriction to [" + std::to_string(n) + ", " + std::to_string(n2) +
                        ") is not injective");
  return ball_max_rows(rrows, s.period_rows, s.dim).value;
}

}  // namespace qf::quotient
