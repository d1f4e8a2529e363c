#include "qf/quotient/tail_vector.hpp"

#include <algorithm>

namespace qf::quotient {

TailVector::TailVector(std::vector<Rational> prefix, std::vector<Rational> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("tail period must be nonempty");
}

Rational TailVector::at(Index i) const {
  if (i < 0) throw std::out_of_range("negative index");
  if (i < prefix_length()) return prefix_[i];
  return period_[(i - prefix_length()) % period_length()];
}

WindowVector TailVector::window(Window w) const {
  std::vector<Rational> c;
  c.reserve(std::max<Index>(w.size(), 0));
  for (Index i = w.lo; i < w.hi; ++i) c.push_back(at(i));
  return WindowVector(w.lo, std::move(c));
}

Rational TailVector::sup_norm() const { return tail_sup_norm(0); }

Rational TailVector::tail_sup_norm(Index k) const {
  Rational m = quotient_norm(*this);
  for (Index i = std::max<Index>(k, 0); i < prefix_length(); ++i)
    if (rabs(prefix_[i]) > m) m = rabs(prefix_[i]);
  return m;
}

bool TailVector::eventually_zero() const {
  return std::all_of(period_.begin(), period_.end(), [](const Rational& x) { return x == 0; });
}

TailVector TailVector::aligned(Index m, Index L) const {
  if (m < prefix_length() || L % period_length() != 0)
    throw std::invalid_argument("alignment must extend prefix and multiply period");
  std::vector<Rational> p, q;
  for (Index i = 0; i < m; ++i) p.push_back(at(i));
  for (Index i = 0; i < L; ++i) q.push_back(at(m + i));
  return TailVector(std::move(p), std::move(q));
}

TailVector TailVector::canonical() const {
  std::vector<Rational> per = period_;
  const std::size_t L = per.size();
  for (std::size_t p = 1; p <= L; ++p) {
    if (L % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < L && ok; ++i) ok = per[i] == per[i - p];
    if (ok) {
      per.resize(p);
      break;
    }
  }
  std::vector<Rational> pre = prefix_;
  while (!pre.empty() && pre.back() == per.back()) {
    std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
    pre.pop_back();
  }
  return TailVector(std::move(pre), std::move(per));
}

namespace {

template <class Op>
TailVector combine(const TailVector& a, const TailVector& b, Op op) {
  Index m = std::max(a.prefix_length(), b.prefix_length());
  Index L = lcm64(a.period_length(), b.period_length());
  TailVector x = a.aligned(m, L), y = b.aligned(m, L);
  std::vector<Rational> p(m), q(L);
  for (Index i = 0; i < m; ++i) p[i] = op(x.prefix()[i], y.prefix()[i]);
  for (Index i = 0; i < L; ++i) q[i] = op(x.period()[i], y.period()[i]);
  return TailVector(std::move(p), std::move(q));
}

}  // namespace

TailVector TailVector::operator+(const TailVector& o) const {
  return combine(*this, o, [](const Rational& x, const Rational& y) { return Rational(x + y); });
}

TailVector TailVector::operator-(const TailVector& o) const {
  return combine(*this, o, [](const Rational& x, const Rational& y) { return Rational(x - y); });
}

TailVector TailVector::operator*(const Rational& s) const {
  TailVector out = *this;
  for (auto& x : out.prefix_) x *= s;
  for (auto& x : out.period_) x *= s;
  return out;
}

bool TailVector::operator==(const TailVector& o) const {
  TailVector a = canonical(), b = o.canonical();
  return a.prefix_ == b.prefix_ && a.period_ == b.period_;
}

Rational quotient_norm(const TailVector& f) {
  Rational m = 0;
  for (const auto& x : f.period())
    if (rabs(x) > m) m = rabs(x);
  return m;
}

bool equal_mod_c0(const TailVector& f, const TailVector& g) { return (f - g).eventually_zero(); }

Json tail_json(const TailVector& f) {
  return Json{{"prefix", rationals_json(f.prefix())}, {"period", rationals_json(f.period())}};
}

TailVector tail_from(const Json& j) {
  return TailVector(rationals_from(j.at("prefix")), rationals_from(j.at("period")));
}

}  // namespace qf::quotient
