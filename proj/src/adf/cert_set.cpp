#include "qf/adf/cert_set.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

namespace qf::adf {

namespace {

using Wide = __int128;

constexpr Nat kMaxNat = std::numeric_limits<Nat>::max() / 4;
constexpr Nat kFactorLimit = 1'000'000;
constexpr Nat kLeftoverCap = 10'000'000;

Nat checked(Wide v) {
  if (v > kMaxNat || v < -kMaxNat) throw RuleOverflow("progression arithmetic overflow");
  return static_cast<Nat>(v);
}

Nat mod(Wide x, Nat m) {
  Wide r = x % m;
  return static_cast<Nat>(r < 0 ? r + m : r);
}

// Inverse of a modulo m, gcd(a, m) = 1.
Nat inverse_mod(Nat a, Nat m) {
  Wide r0 = m, r1 = mod(a, m), t0 = 0, t1 = 1;
  while (r1 != 0) {
    Wide q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  return mod(t0, m);
}

std::vector<Nat> prime_factors(Nat r) {
  std::vector<Nat> out;
  for (Nat p = 2; p * p <= r; ++p) {
    if (p > kFactorLimit) throw RuleOverflow("modulus has no small factorization");
    while (r % p == 0) {
      out.push_back(p);
      r /= p;
    }
  }
  if (r > 1) out.push_back(r);
  return out;
}

void sort_unique(std::vector<Nat>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

bool in_progs(const std::vector<Progression>& ps, Nat x) {
  return std::any_of(ps.begin(), ps.end(), [&](const Progression& p) { return p.contains(x); });
}

struct Pieces {
  std::vector<Progression> progs;
  std::vector<Nat> finite;
};

// P \ Q as disjoint progressions plus finitely many points.
Pieces prog_minus(const Progression& p, const Progression& q) {
  auto inter = intersect(p, q);
  if (!inter) return {{p}, {}};
  const Nat l = inter->d;
  const Nat c0 = p.a + mod(static_cast<Wide>(inter->a) - p.a, l);
  Pieces out;
  if ((inter->a - c0) / l > kLeftoverCap) throw RuleOverflow("difference leaves too many points");
  for (Nat x = c0; x < inter->a; x += l) out.finite.push_back(x);
  // k-space: P = {a + d k}; the removed class is k = k0 mod r.
  const Nat r = l / p.d;
  const Nat k0 = (c0 - p.a) / p.d;
  if (r == 1) return out;
  Nat radix = 1;
  for (Nat prime : prime_factors(r)) {
    const Nat next = checked(static_cast<Wide>(radix) * prime);
    const Nat digit = (k0 / radix) % prime;
    for (Nat j = 0; j < prime; ++j) {
      if (j == digit) continue;
      const Nat k = k0 % radix + radix * j;
      out.progs.push_back({checked(p.a + static_cast<Wide>(p.d) * k),
                           checked(static_cast<Wide>(p.d) * next)});
    }
    radix = next;
  }
  return out;
}

Pieces minus_all(const std::vector<Progression>& ps, const std::vector<Progression>& qs) {
  Pieces out;
  out.progs = ps;
  for (const auto& q : qs) {
    std::vector<Progression> next;
    for (const auto& p : out.progs) {
      auto pc = prog_minus(p, q);
      next.insert(next.end(), pc.progs.begin(), pc.progs.end());
      out.finite.insert(out.finite.end(), pc.finite.begin(), pc.finite.end());
    }
    out.progs = std::move(next);
  }
  std::erase_if(out.finite, [&](Nat x) { return in_progs(qs, x); });
  return out;
}

// Replace full residue systems {a + i d/p : i < p} of step d by one progression of step d/p.
void merge_progressions(std::vector<Progression>& ps) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<Progression> have(ps.begin(), ps.end());
    for (const auto& base : ps) {
      for (Nat prime : prime_factors(base.d)) {
        const Nat step = base.d / prime;
        bool full = true;
        for (Nat i = 1; i < prime && full; ++i)
          full = have.count({base.a + i * step, base.d}) > 0;
        if (!full) continue;
        for (Nat i = 0; i < prime; ++i) have.erase({base.a + i * step, base.d});
        have.insert({base.a, step});
        changed = true;
        break;
      }
      if (changed) break;
    }
    ps.assign(have.begin(), have.end());
  }
}

}  // namespace

Nat Progression::nth(Nat k) const { return checked(a + static_cast<Wide>(d) * k); }

Nat Progression::first_at_least(Nat x) const {
  if (x <= a) return a;
  return checked(a + static_cast<Wide>(d) * ((x - a + d - 1) / d));
}

std::optional<Progression> intersect(const Progression& p, const Progression& q) {
  const Nat g = std::gcd(p.d, q.d);
  const Wide diff = static_cast<Wide>(q.a) - p.a;
  if (diff % g != 0) return std::nullopt;
  const Nat l = checked(static_cast<Wide>(p.d / g) * q.d);
  const Nat m = q.d / g;
  const Nat t = m == 1 ? 0 : mod(static_cast<Wide>(mod(diff / g, m)) * inverse_mod(p.d / g, m), m);
  const Nat x0 = mod(p.a + static_cast<Wide>(p.d) * t, l);
  const Nat lo = std::max(p.a, q.a);
  return Progression{checked(lo + static_cast<Wide>(mod(static_cast<Wide>(x0) - lo, l))), l};
}

CertSet::CertSet(std::vector<Progression> progs, std::vector<Nat> add, std::vector<Nat> remove)
    : progs_(std::move(progs)), add_(std::move(add)), remove_(std::move(remove)) {
  for (const auto& p : progs_)
    if (p.a < 0 || p.d < 1) throw std::invalid_argument("progression needs a >= 0, d >= 1");
  for (std::size_t i = 0; i < progs_.size(); ++i)
    for (std::size_t j = i + 1; j < progs_.size(); ++j)
      if (intersect(progs_[i], progs_[j]))
        throw std::invalid_argument("progressions must be pairwise disjoint");
  for (Nat x : add_)
    if (x < 0) throw std::invalid_argument("negative element");
  merge_progressions(progs_);
  sort_unique(add_);
  sort_unique(remove_);
  std::erase_if(add_, [&](Nat x) { return in_progs(progs_, x); });
  std::erase_if(remove_, [&](Nat x) { return !in_progs(progs_, x); });
}

CertSet CertSet::progression(Nat a, Nat d) { return CertSet({{a, d}}, {}, {}); }

CertSet CertSet::finite(std::vector<Nat> xs) { return CertSet({}, std::move(xs), {}); }

CertSet CertSet::range(Nat lo, Nat hi) {
  if (hi - lo > kLeftoverCap) throw RuleOverflow("range too large");
  std::vector<Nat> xs;
  for (Nat x = std::max<Nat>(lo, 0); x < hi; ++x) xs.push_back(x);
  return finite(std::move(xs));
}

bool CertSet::contains(Nat x) const {
  if (std::binary_search(add_.begin(), add_.end(), x)) return true;
  if (std::binary_search(remove_.begin(), remove_.end(), x)) return false;
  return in_progs(progs_, x);
}

std::vector<Nat> CertSet::elements() const {
  if (infinite()) throw std::logic_error("elements() of an infinite set");
  return add_;
}

Nat CertSet::count_below(Nat x) const {
  Wide n = 0;
  for (const auto& p : progs_) n += p.count_below(x);
  n -= std::lower_bound(remove_.begin(), remove_.end(), x) - remove_.begin();
  n += std::lower_bound(add_.begin(), add_.end(), x) - add_.begin();
  return checked(n);
}

Nat CertSet::nth(Nat k) const {
  if (k < 0) throw std::out_of_range("negative index");
  if (!infinite()) {
    if (k >= static_cast<Nat>(add_.size())) throw std::out_of_range("index beyond finite set");
    return add_[k];
  }
  Nat hi = 1;
  while (count_below(hi) <= k) hi = checked(static_cast<Wide>(hi) * 2);
  Nat lo = 0;  // count_below(lo) <= k < count_below(hi)
  while (hi - lo > 1) {
    Nat mid = lo + (hi - lo) / 2;
    (count_below(mid) <= k ? lo : hi) = mid;
  }
  return lo;
}

std::vector<Nat> CertSet::first(Nat n) const {
  std::vector<Nat> out;
  if (!infinite()) {
    out.assign(add_.begin(), add_.begin() + std::min<Nat>(n, add_.size()));
    return out;
  }
  Nat x = 0;
  while (static_cast<Nat>(out.size()) < n) {
    Nat best = kMaxNat;
    auto it = std::lower_bound(add_.begin(), add_.end(), x);
    if (it != add_.end()) best = *it;
    for (const auto& p : progs_) best = std::min(best, p.first_at_least(x));
    if (contains(best)) out.push_back(best);
    x = best + 1;
  }
  return out;
}

std::optional<Nat> CertSet::min() const {
  if (empty()) return std::nullopt;
  return first(1).front();
}

std::optional<Progression> CertSet::infinite_witness() const {
  if (!infinite()) return std::nullopt;
  const Progression& p = progs_.front();
  Nat floor = p.a;
  for (Nat r : remove_)
    if (p.contains(r)) floor = std::max(floor, r + 1);
  return Progression{p.first_at_least(floor), p.d};
}

namespace {

enum class Op { And, Or, Minus };

bool apply_op(Op op, bool a, bool b) {
  switch (op) {
    case Op::And: return a && b;
    case Op::Or: return a || b;
    case Op::Minus: return a && !b;
  }
  return false;
}

CertSet combine(const CertSet& a, const CertSet& b, Op op) {
  std::vector<Progression> progs;
  std::vector<Nat> leftovers;
  const auto& pa = a.progressions();
  const auto& pb = b.progressions();
  switch (op) {
    case Op::And:
      for (const auto& p : pa)
        for (const auto& q : pb)
          if (auto r = intersect(p, q)) progs.push_back(*r);
      break;
    case Op::Or: {
      auto extra = minus_all(pb, pa);
      progs = pa;
      progs.insert(progs.end(), extra.progs.begin(), extra.progs.end());
      leftovers = std::move(extra.finite);
      break;
    }
    case Op::Minus: {
      auto rest = minus_all(pa, pb);
      progs = std::move(rest.progs);
      leftovers = std::move(rest.finite);
      break;
    }
  }
  std::vector<Nat> candidates = leftovers;
  for (const auto* s : {&a, &b}) {
    candidates.insert(candidates.end(), s->added().begin(), s->added().end());
    candidates.insert(candidates.end(), s->removed().begin(), s->removed().end());
  }
  sort_unique(candidates);
  std::vector<Nat> add, remove;
  for (Nat x : candidates) {
    const bool want = apply_op(op, a.contains(x), b.contains(x));
    const bool base = in_progs(progs, x);
    if (want && !base) add.push_back(x);
    if (!want && base) remove.push_back(x);
  }
  return CertSet(std::move(progs), std::move(add), std::move(remove));
}

}  // namespace

CertSet CertSet::operator&(const CertSet& o) const { return combine(*this, o, Op::And); }
CertSet CertSet::operator|(const CertSet& o) const { return combine(*this, o, Op::Or); }
CertSet CertSet::operator-(const CertSet& o) const { return combine(*this, o, Op::Minus); }

CertSet CertSet::affine_image(Nat p, Nat q) const {
  if (p < 1) throw std::invalid_argument("affine image needs p >= 1");
  auto map = [&](Nat x) { return checked(static_cast<Wide>(p) * x + q); };
  std::vector<Progression> ps;
  for (const auto& pr : progs_) ps.push_back({map(pr.a), checked(static_cast<Wide>(p) * pr.d)});
  std::vector<Nat> add, remove;
  for (Nat x : add_) add.push_back(map(x));
  for (Nat x : remove_) remove.push_back(map(x));
  return CertSet(std::move(ps), std::move(add), std::move(remove));
}

bool CertSet::same_as(const CertSet& o) const { return (*this - o).empty() && (o - *this).empty(); }

Json AlmostCert::json() const {
  Json j{{"holds", holds}, {"exceptions", nats_json(exceptions)}};
  if (witness) j["witness"] = Json::array({witness->a, witness->d});
  return j;
}

namespace {

AlmostCert finite_cert(const CertSet& s) {
  AlmostCert c;
  if (s.infinite()) {
    c.witness = s.infinite_witness();
    return c;
  }
  c.holds = true;
  c.exceptions = s.elements();
  return c;
}

}  // namespace

AlmostCert almost_subset(const CertSet& a, const CertSet& b) { return finite_cert(a - b); }

AlmostCert almost_equal(const CertSet& a, const CertSet& b) {
  return finite_cert((a - b) | (b - a));
}

AlmostCert almost_disjoint(const CertSet& a, const CertSet& b) { return finite_cert(a & b); }

Json nats_json(const std::vector<Nat>& xs) {
  Json out = Json::array();
  for (Nat x : xs) out.push_back(x);
  return out;
}

Json cert_set_json(const CertSet& s) {
  Json progs = Json::array();
  for (const auto& p : s.progressions()) progs.push_back(Json::array({p.a, p.d}));
  return Json{{"progressions", progs}, {"add", nats_json(s.added())}, {"remove", nats_json(s.removed())}};
}

CertSet cert_set_from(const Json& j) {
  std::vector<Progression> ps;
  for (const auto& p : j.value("progressions", Json::array())) {
    if (!p.is_array() || p.size() != 2) throw ParseError("progression must be [a, d]");
    ps.push_back({p[0].get<Nat>(), p[1].get<Nat>()});
  }
  return CertSet(std::move(ps), j.value("add", std::vector<Nat>{}), j.value("remove", std::vector<Nat>{}));
}

}  // namespace qf::adf
