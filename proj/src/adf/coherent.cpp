#include "qf/adf/coherent.hpp"

#include <algorithm>

namespace qf::adf {

namespace {

const std::vector<Position> kNone;

Json positions_json(const std::vector<Position>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(position_json(p));
  return out;
}

bool in_window(const LimitStep& st, const Position& p) { return st.lo <= p.fiber && p.fiber < st.hi; }

}  // namespace

Json LimitStep::json() const {
  Json h = Json::array();
  for (const auto& [p, y] : h2) h.push_back(Json{{"x", position_json(p)}, {"y", y}});
  return Json{{"lo", ordinal_json(lo)}, {"hi", ordinal_json(hi)}, {"X", positions_json(x)},
              {"D1", positions_json(d1)}, {"D2", positions_json(d2)}, {"D3", positions_json(d3)},
              {"h2", h}};
}

CoherentFamily::CoherentFamily(Family fam, Ordinal cap) : chain_(std::move(fam)), cap_(cap) {}

void CoherentFamily::check_stage(const Ordinal& alpha) const {
  if (!(alpha < cap_)) throw IndexBeyondCap("stage " + alpha.str() + " is not below the cap " + cap_.str());
}

const CertSet& CoherentFamily::w(const Ordinal& alpha) const { return chain_.v(alpha); }

const CertSet& CoherentFamily::derived(const Ordinal& xi) const {
  if (auto it = derived_.find(xi); it != derived_.end()) return it->second;
  check_stage(xi);
  if (!family().has(xi)) throw ChainViolation("no member at " + xi.str());
  CertSet e = family().member(xi) - w(xi);
  if (!e.infinite()) throw ChainViolation("A \\ W is finite at " + xi.str());
  return derived_.emplace(xi, std::move(e)).first->second;
}

Nat CoherentFamily::window_of(const Ordinal& limit, const Ordinal& fiber) const {
  Nat n = 1;
  while (!(fiber < limit.fundamental(n))) ++n;
  return n;
}

const LimitStep& CoherentFamily::step(const Ordinal& limit, Nat n) const {
  check_stage(limit);
  auto& built = steps_[limit];
  while (static_cast<Nat>(built.size()) < n) build_step(limit, static_cast<Nat>(built.size()) + 1);
  return built[n - 1];
}

Nat CoherentFamily::steps_built(const Ordinal& limit) const {
  auto it = steps_.find(limit);
  return it == steps_.end() ? 0 : static_cast<Nat>(it->second.size());
}

std::optional<Nat> CoherentFamily::eval(const Ordinal& alpha, const Position& x) const {
  check_stage(alpha);
  if (!(x.fiber < alpha) || x.j < 0) return std::nullopt;
  const Ordinal base = alpha.limit_part();
  if (base <= x.fiber) return derived(x.fiber).nth(x.j);
  return eval_limit(base, x);
}

std::optional<Nat> CoherentFamily::eval_limit(const Ordinal& limit, const Position& x) const {
  const Nat n = window_of(limit, x.fiber);
  const LimitStep& st = step(limit, n);
  if (auto it = st.h2.find(x); it != st.h2.end()) return it->second;
  return eval(st.hi, x);
}

std::optional<Position> CoherentFamily::preimage(const Ordinal& alpha, Nat y) const {
  check_stage(alpha);
  const Ordinal base = alpha.limit_part();
  for (Nat i = 0; i < alpha.c0; ++i) {
    const Ordinal zeta = base.plus(i);
    const CertSet& e = derived(zeta);
    if (e.contains(y)) return Position{zeta, e.count_below(y)};
  }
  if (base.is_limit()) return preimage_limit(base, y);
  return std::nullopt;
}

bool CoherentFamily::owned_by_step(const Ordinal& limit, Nat m, Nat y, Position* out) const {
  const LimitStep& st = step(limit, m);
  if (auto it = st.h2_inv.find(y); it != st.h2_inv.end()) {
    *out = it->second;
    return true;
  }
  auto x = preimage(st.hi, y);
  if (x && in_window(st, *x) && !st.h2.count(*x)) {
    *out = *x;
    return true;
  }
  return false;
}

std::optional<Position> CoherentFamily::t_inverse(const Ordinal& limit, Nat n, Nat y) const {
  Position p;
  for (Nat m = n; m >= 1; --m)
    if (owned_by_step(limit, m, y, &p)) return p;
  return std::nullopt;
}

std::optional<Position> CoherentFamily::preimage_limit(const Ordinal& limit, Nat y) const {
  const CertSet& wl = w(limit);
  if (!wl.contains(y)) return std::nullopt;
  // y is the k-th element of W, so y lies in ran(t_{k+1}).
  const Nat bound = wl.count_below(y) + 1;
  Position p;
  for (Nat m = 1; m <= bound; ++m)
    if (owned_by_step(limit, m, y, &p)) return p;
  throw std::logic_error("coverage of W failed at " + std::to_string(y));
}

void CoherentFamily::build_step(const Ordinal& limit, Nat n) const {
  auto& built = steps_[limit];
  LimitStep st;
  st.lo = limit.fundamental(n - 1);
  st.hi = limit.fundamental(n);
  const Ordinal& hi = st.hi;

  std::set<Position> cand;
  for (Nat k = 1; k < n; ++k) {
    const LimitStep& sk = built[k - 1];
    cand.insert(sk.d3.begin(), sk.d3.end());
    for (const auto& p : exceptions(sk.hi, hi))
      if (in_window(sk, p)) cand.insert(p);
  }
  for (const auto& p : cand)
    if (eval_limit(limit, p) != eval(hi, p)) st.x.push_back(p);

  const CertSet& w_hi = w(hi);
  const CertSet& w_lim = w(limit);
  const CertSet outside = w_hi - w_lim;
  if (outside.infinite())
    throw HypothesisViolated(4, "ran(s_" + hi.str() + ") \\ W_" + limit.str() + " is infinite");
  const CertSet fresh = w_lim - w_hi;
  if (!fresh.infinite())
    throw HypothesisViolated(5, "W_" + limit.str() + " \\ ran(s_" + hi.str() + ") is finite");

  std::set<Position> d3;
  for (Nat y : outside.elements())
    if (auto x = preimage(hi, y); x && in_window(st, *x)) st.d1.push_back(*x);
  std::set<Position> d2;
  for (const auto& p : st.x)
    if (auto x = preimage(hi, *eval_limit(limit, p)); x && in_window(st, *x)) d2.insert(*x);
  st.d2.assign(d2.begin(), d2.end());
  d3.insert(st.d1.begin(), st.d1.end());
  d3.insert(d2.begin(), d2.end());
  for (Nat j = 0; static_cast<Nat>(d3.size()) < n; ++j) d3.insert(Position{st.lo, j});
  st.d3.assign(d3.begin(), d3.end());

  const std::vector<Nat> sigma = w_lim.first(n);
  auto in_ran_h1 = [&](Nat y) {
    if (t_inverse(limit, n - 1, y)) return true;
    auto x = preimage(hi, y);
    return x && in_window(st, *x) && !d3.count(*x);
  };
  std::vector<Nat> targets;
  for (Nat y : sigma)
    if (!in_ran_h1(y)) targets.push_back(y);
  const std::set<Nat> chosen(targets.begin(), targets.end());
  std::set<Nat> pool;
  for (const auto& p : st.d3)
    if (auto y = eval(hi, p); y && w_lim.contains(*y)) pool.insert(*y);
  for (const auto& p : st.x)
    if (auto y = eval(hi, p); y && w_lim.contains(*y)) pool.insert(*y);
  const Nat need = static_cast<Nat>(st.d3.size() - targets.size());
  for (Nat y : fresh.first(need + static_cast<Nat>(st.x.size()) + n)) pool.insert(y);
  for (Nat y : pool) {
    if (targets.size() == st.d3.size()) break;
    if (!chosen.count(y) && !in_ran_h1(y)) targets.push_back(y);
  }
  if (targets.size() != st.d3.size()) throw std::logic_error("limit step ran out of free values");
  for (std::size_t i = 0; i < st.d3.size(); ++i) {
    st.h2[st.d3[i]] = targets[i];
    st.h2_inv[targets[i]] = st.d3[i];
  }
  built.push_back(std::move(st));
  for (Nat y : sigma)
    if (!t_inverse(limit, n, y))
      throw std::logic_error("sigma[" + std::to_string(n) + "] not covered at " + limit.str());
}

const std::vector<Position>& CoherentFamily::exceptions(const Ordinal& beta, const Ordinal& alpha) const {
  if (alpha < beta) throw std::invalid_argument("exceptions(beta, alpha) needs beta <= alpha");
  check_stage(alpha);
  const Ordinal base = alpha.limit_part();
  if (beta.is_zero() || base <= beta) return kNone;
  if (alpha.is_successor()) return exceptions(beta, base);
  const auto key = std::make_pair(beta, alpha);
  if (auto it = exceptions_.find(key); it != exceptions_.end()) return it->second;
  Nat top = 1;
  while (alpha.fundamental(top) < beta) ++top;
  std::set<Position> cand;
  for (Nat k = 1; k <= top; ++k) {
    const LimitStep& st = step(alpha, k);
    for (const auto& p : st.d3)
      if (p.fiber < beta) cand.insert(p);
    const auto& other = st.hi <= beta ? exceptions(st.hi, beta) : exceptions(beta, st.hi);
    for (const auto& p : other)
      if (in_window(st, p) && p.fiber < beta) cand.insert(p);
  }
  std::vector<Position> out;
  for (const auto& p : cand)
    if (eval(alpha, p) != eval(beta, p)) out.push_back(p);
  return exceptions_.emplace(key, std::move(out)).first->second;
}

CertSet CoherentFamily::fiber_image(const Ordinal& alpha, const Ordinal& zeta) const {
  if (!(zeta < alpha)) throw std::invalid_argument("fiber " + zeta.str() + " is not below " + alpha.str());
  std::vector<Nat> old_vals, new_vals;
  const CertSet& e = derived(zeta);
  for (const auto& p : exceptions(zeta.succ(), alpha)) {
    if (p.fiber != zeta) continue;
    old_vals.push_back(e.nth(p.j));
    new_vals.push_back(*eval(alpha, p));
  }
  return (e - CertSet::finite(old_vals)) | CertSet::finite(new_vals);
}

CertSet boolean_mono(const CoherentFamily& cf, const BoolIndex& x) {
  if (x.cofinite) return CertSet::naturals() - boolean_mono(cf, BoolIndex{x.elems, false});
  if (x.elems.empty()) return {};
  const Ordinal alpha = x.elems.rbegin()->succ();
  CertSet out;
  for (const auto& zeta : x.elems) out = out | cf.fiber_image(alpha, zeta);
  return out;
}

LawReport verify_boolean_laws(const CoherentFamily& cf, const std::vector<Ordinal>& base) {
  const std::size_t k = base.size();
  if (k > 12) throw ParameterCap("boolean law check supports at most 12 indices");
  const std::size_t masks = std::size_t{1} << k;
  std::vector<CertSet> h(masks);
  for (std::size_t m = 0; m < masks; ++m) {
    BoolIndex x;
    for (std::size_t i = 0; i < k; ++i)
      if (m >> i & 1) x.elems.insert(base[i]);
    h[m] = boolean_mono(cf, x);
  }
  LawReport r;
  for (std::size_t i = 0; i < k; ++i) {
    ++r.pairs;
    if (!almost_equal(h[std::size_t{1} << i], cf.family().member(base[i])).holds) ++r.failures;
  }
  for (std::size_t a = 0; a < masks; ++a)
    for (std::size_t b = 0; b < masks; ++b) {
      ++r.pairs;
      const bool ok = almost_equal(h[a & b], h[a] & h[b]).holds && almost_equal(h[a | b], h[a] | h[b]).holds &&
                      almost_equal(h[a & ~b], h[a] - h[b]).holds;
      if (!ok) ++r.failures;
    }
  return r;
}

Separation separator_from_embedding(const CoherentFamily& cf, const std::set<Ordinal>& f) {
  const CertSet v = boolean_mono(cf, BoolIndex{f, false});
  std::vector<CertSet> bs, cs;
  for (const auto& xi : f) bs.push_back(cf.family().member(xi));
  const Family& fam = cf.family();
  for (std::size_t i = 0; i < fam.index.size(); ++i)
    if (!f.count(fam.index[i]) && fam.index[i] < cf.cap()) cs.push_back(fam.sets[i]);
  return certify_separation(v, bs, cs);
}

Json IsoChainReport::json() const {
  Json st = Json::array();
  for (const auto& s : stages) st.push_back(ordinal_json(s));
  return Json{{"stages", st},         {"derived", derived},         {"pairwise", pairwise},
              {"coherence", coherence}, {"injectivity", injectivity}, {"chain", chain},
              {"failures", failures}};
}

IsoChainReport iso_chain(const Family& fam, const IsoChainConfig& cfg) {
  IsoChainReport r;
  r.family = std::make_shared<CoherentFamily>(fam, cfg.cap);
  const CoherentFamily& cf = *r.family;
  std::vector<Ordinal> members;
  for (const auto& xi : fam.index)
    if (xi < cfg.cap) members.push_back(xi);
  std::set<Ordinal> stages;
  for (const auto& xi : members) {
    stages.insert(xi);
    if (xi.succ() < cfg.cap) stages.insert(xi.succ());
  }
  if (!members.empty() && fam.uniform())
    for (Nat a = 1; a <= std::min(fam.blocks, cfg.cap.c2 > 0 ? fam.blocks : cfg.cap.c1); ++a)
      if (Ordinal::omega_times(a) < cfg.cap) stages.insert(Ordinal::omega_times(a));
  stages.erase(Ordinal{});
  r.stages.assign(stages.begin(), stages.end());

  r.derived = Json::array();
  std::vector<CertSet> derived;
  for (const auto& xi : members) {
    derived.push_back(cf.derived(xi));
    AlmostCert c = almost_equal(derived.back(), fam.member(xi));
    if (!c.holds) ++r.failures;
    r.derived.push_back(Json{{"xi", ordinal_json(xi)}, {"set", cert_set_json(derived.back())}, {"cert", c.json()}});
  }
  r.pairwise = Json::array();
  for (std::size_t i = 0; i < derived.size(); ++i)
    for (std::size_t j = i + 1; j < derived.size(); ++j) {
      AlmostCert c = almost_disjoint(derived[i], derived[j]);
      if (!c.holds) ++r.failures;
      r.pairwise.push_back(Json{{"i", i}, {"j", j}, {"cert", c.json()}});
    }

  auto sample = [&](const Ordinal& below) {
    std::vector<Position> ps;
    for (const auto& xi : members)
      if (xi < below)
        for (Nat j = 0; j < cfg.sample_j; ++j) ps.push_back({xi, j});
    return ps;
  };
  r.coherence = Json::array();
  for (auto b = r.stages.begin(); b != r.stages.end(); ++b)
    for (auto a = std::next(b); a != r.stages.end(); ++a) {
      const auto& exc = cf.exceptions(*b, *a);
      const std::set<Position> exc_set(exc.begin(), exc.end());
      Nat mismatches = 0;
      for (const auto& p : sample(*b))
        if ((cf.eval(*a, p) != cf.eval(*b, p)) != (exc_set.count(p) > 0)) ++mismatches;
      for (const auto& p : exc)
        if (!(p.fiber < *b) || cf.eval(*a, p) == cf.eval(*b, p)) ++mismatches;
      if (mismatches) ++r.failures;
      r.coherence.push_back(Json{{"beta", ordinal_json(*b)}, {"alpha", ordinal_json(*a)},
                                 {"exceptions", positions_json(exc)}, {"mismatches", mismatches}});
    }

  r.injectivity = Json::array();
  for (const auto& alpha : r.stages) {
    std::set<Nat> seen;
    Nat bad = 0;
    const auto pts = sample(alpha);
    for (const auto& p : pts) {
      auto y = cf.eval(alpha, p);
      if (!y || !seen.insert(*y).second || !cf.w(alpha).contains(*y) || cf.preimage(alpha, *y) != p) ++bad;
    }
    if (bad) ++r.failures;
    r.injectivity.push_back(Json{{"alpha", ordinal_json(alpha)}, {"points", pts.size()}, {"failures", bad}});
  }

  bool chain_ok = true;
  r.chain = cf.chain().verify(r.stages, &chain_ok);
  if (!chain_ok) ++r.failures;
  return r;
}

}  // namespace qf::adf
