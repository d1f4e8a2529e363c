#include "qf/adf/family.hpp"

#include <algorithm>

namespace qf::adf {

namespace {

constexpr Nat kMaxBranchDepth = 20;
constexpr Nat kMaxLuzin = 2000;
constexpr Nat kMaxExponent = 58;

Nat bit_length(Nat x) {
  Nat n = 0;
  while (x > 0) {
    ++n;
    x >>= 1;
  }
  return n;
}

std::vector<PairCert> pairwise_certs(const std::vector<CertSet>& sets) {
  std::vector<PairCert> out;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      out.push_back({i, j, almost_disjoint_check(sets[i], sets[j])});
  return out;
}

LuzinReport luzin_report(const Family& fam, Nat horizon) {
  const Nat n_sets = static_cast<Nat>(fam.sets.size());
  LuzinReport r;
  r.n_sets = n_sets;
  r.horizon = horizon;
  r.worst.assign(horizon + 1, 0);
  for (Nat n = 0; n <= horizon; ++n) r.bound.push_back((n + n_sets - 1) / n_sets);
  // top[a][b] = 1 + max(A_a cap A_b), 0 if empty.
  std::vector<std::vector<Nat>> top(n_sets, std::vector<Nat>(n_sets, 0));
  for (const auto& pc : fam.pairwise) {
    Nat t = pc.cert.exceptions.empty() ? 0 : pc.cert.exceptions.back() + 1;
    top[pc.i][pc.j] = top[pc.j][pc.i] = t;
  }
  r.ok = fam.almost_disjoint();
  for (Nat a = 0; a < n_sets; ++a)
    for (Nat n = 0; n <= horizon; ++n) {
      Nat c = 0;
      for (Nat b = 0; b < a; ++b) c += top[a][b] <= n;
      r.worst[n] = std::max(r.worst[n], c);
    }
  for (Nat n = 0; n <= horizon; ++n) r.ok = r.ok && r.worst[n] <= r.bound[n];
  return r;
}

}  // namespace

FamilyKind family_kind_from(const std::string& s) {
  if (s == "progression") return FamilyKind::Progression;
  if (s == "branch") return FamilyKind::Branch;
  if (s == "luzin") return FamilyKind::Luzin;
  if (s == "explicit") return FamilyKind::Explicit;
  throw ParseError("unknown family kind: " + s);
}

std::string family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Progression: return "progression";
    case FamilyKind::Branch: return "branch";
    case FamilyKind::Luzin: return "luzin";
    case FamilyKind::Explicit: return "explicit";
  }
  return "explicit";
}

Json LuzinReport::json() const {
  return Json{{"n_sets", n_sets}, {"horizon", horizon}, {"worst", worst}, {"bound", bound}, {"ok", ok}};
}

CertSet progression_member(Nat blocks, const Ordinal& xi) {
  if (xi.c2 != 0 || xi.c1 >= blocks) throw std::out_of_range("index " + xi.str() + " outside the generator");
  if (xi.c0 + bit_length(blocks) > kMaxExponent) throw RuleOverflow("progression member too sparse: " + xi.str());
  const Nat step = blocks << (xi.c0 + 1);
  return CertSet::progression(xi.c1 + (step >> 1), step);
}

bool Family::has(const Ordinal& xi) const {
  if (uniform()) return xi.c2 == 0 && xi.c1 < blocks;
  return std::find(index.begin(), index.end(), xi) != index.end();
}

CertSet Family::member(const Ordinal& xi) const {
  if (uniform()) return progression_member(blocks, xi);
  auto it = std::find(index.begin(), index.end(), xi);
  if (it == index.end()) throw std::out_of_range("no member at index " + xi.str());
  return sets[it - index.begin()];
}

std::optional<CertSet> Family::union_below(const Ordinal& limit) const {
  if (!uniform()) return std::nullopt;
  const Nat top = limit.c2 > 0 ? blocks : std::min(limit.c1, blocks);
  std::vector<Progression> ps;
  for (Nat a = 0; a < top; ++a) ps.push_back({a + blocks, blocks});
  return CertSet(std::move(ps), {}, {});
}

bool Family::almost_disjoint() const {
  return std::all_of(pairwise.begin(), pairwise.end(), [](const PairCert& p) { return p.cert.holds; });
}

Json Family::json() const {
  Json idx = Json::array(), ss = Json::array(), pw = Json::array();
  for (const auto& o : index) idx.push_back(ordinal_json(o));
  for (const auto& s : sets) ss.push_back(cert_set_json(s));
  for (const auto& p : pairwise) pw.push_back(Json{{"i", p.i}, {"j", p.j}, {"cert", p.cert.json()}});
  Json j{{"kind", family_kind_name(kind)}, {"index", idx}, {"sets", ss},
         {"blocks", blocks}, {"pairwise", pw}, {"almost_disjoint", almost_disjoint()}};
  if (luzin) j["luzin"] = luzin->json();
  return j;
}

Family make_family(const FamilyGenerator& gen) {
  Family fam;
  fam.kind = gen.kind;
  switch (gen.kind) {
    case FamilyKind::Progression: {
      if (gen.blocks < 1 || gen.count < 0 || gen.count % gen.blocks != 0)
        throw ParameterCap("progression family needs count divisible by blocks >= 1");
      const Nat per = gen.count / gen.blocks;
      if (per + bit_length(gen.blocks) > kMaxExponent) throw ParameterCap("progression count too large");
      fam.blocks = gen.blocks;
      for (Nat a = 0; a < gen.blocks; ++a)
        for (Nat b = 0; b < per; ++b) fam.index.push_back(Ordinal::omega_times(a, b));
      for (const auto& xi : fam.index) fam.sets.push_back(progression_member(gen.blocks, xi));
      break;
    }
    case FamilyKind::Branch: {
      const Nat d = gen.depth;
      if (d < 1 || d > kMaxBranchDepth) throw ParameterCap("branch depth must be in [1, 20]");
      if (gen.count < 0 || gen.count > (Nat{1} << d)) throw ParameterCap("branch count exceeds 2^depth leaves");
      const Nat leaves = Nat{1} << d;
      for (Nat i = 0; i < gen.count; ++i) {
        std::vector<Nat> nodes{1};
        Nat c = 1;
        for (Nat t = d - 1; t >= 1; --t) {
          c = 2 * c + ((i >> t) & 1);
          nodes.push_back(c);
        }
        fam.index.push_back(Ordinal::finite(i));
        fam.sets.emplace_back(std::vector<Progression>{{leaves + i, leaves}}, nodes, std::vector<Nat>{});
      }
      break;
    }
    case FamilyKind::Luzin: {
      const Nat n = gen.count;
      if (n < 1 || n > kMaxLuzin) throw ParameterCap("luzin N must be in [1, 2000]");
      for (Nat a = 0; a < n; ++a) {
        std::vector<Nat> meets;
        for (Nat b = 0; b < a; ++b) meets.push_back(b + n * a);
        fam.index.push_back(Ordinal::finite(a));
        fam.sets.emplace_back(std::vector<Progression>{{a, n}}, meets, std::vector<Nat>{});
      }
      break;
    }
    case FamilyKind::Explicit:
      fam.sets = gen.sets;
      for (std::size_t i = 0; i < gen.sets.size(); ++i) fam.index.push_back(Ordinal::finite(static_cast<Nat>(i)));
      break;
  }
  fam.pairwise = pairwise_certs(fam.sets);
  if (gen.kind == FamilyKind::Luzin) fam.luzin = luzin_report(fam, gen.horizon);
  return fam;
}

Family family_from(const Json& j) {
  Family fam;
  const Json& sets = j.is_array() ? j : j.at("sets");
  for (const auto& s : sets) fam.sets.push_back(cert_set_from(s));
  if (j.is_object() && j.contains("index")) {
    for (const auto& o : j.at("index")) fam.index.push_back(ordinal_from(o));
    if (fam.index.size() != fam.sets.size()) throw ParseError("family index and sets differ in length");
  } else {
    for (std::size_t i = 0; i < fam.sets.size(); ++i) fam.index.push_back(Ordinal::finite(static_cast<Nat>(i)));
  }
  if (j.is_object()) {
    fam.kind = family_kind_from(j.value("kind", std::string("explicit")));
    fam.blocks = j.value("blocks", Nat{0});
  }
  fam.pairwise = pairwise_certs(fam.sets);
  return fam;
}

AlmostCert almost_disjoint_check(const CertSet& a, const CertSet& b) { return almost_disjoint(a, b); }

bool Separation::ok() const {
  auto holds = [](const AlmostCert& c) { return c.holds; };
  return std::all_of(inside.begin(), inside.end(), holds) && std::all_of(outside.begin(), outside.end(), holds);
}

Json Separation::json() const {
  Json in = Json::array(), out = Json::array();
  for (const auto& c : inside) in.push_back(c.json());
  for (const auto& c : outside) out.push_back(c.json());
  return Json{{"V", cert_set_json(v)}, {"inside", in}, {"outside", out}, {"ok", ok()}};
}

Separation certify_separation(const CertSet& v, const std::vector<CertSet>& bs, const std::vector<CertSet>& cs) {
  Separation s;
  s.v = v;
  for (const auto& b : bs) s.inside.push_back(almost_subset(b, v));
  for (const auto& c : cs) s.outside.push_back(almost_disjoint(c, v));
  return s;
}

Separation separation_find(const std::vector<CertSet>& bs, const std::vector<CertSet>& cs) {
  CertSet v, overlap;
  for (const auto& b : bs) {
    v = v | b;
    for (const auto& c : cs) {
      CertSet both = b & c;
      if (both.infinite()) throw NotFound("B- and C-families are not almost disjoint");
      overlap = overlap | both;
    }
  }
  return certify_separation(v - overlap, bs, cs);
}

const CertSet& Chain::v(const Ordinal& alpha) const {
  if (auto it = memo_.find(alpha); it != memo_.end()) return it->second;
  CertSet out;
  if (alpha.is_successor()) {
    const Ordinal prev = alpha.pred();
    out = v(prev);
    if (fam_.has(prev)) out = out | fam_.member(prev);
  } else if (alpha.is_limit()) {
    if (auto closed = fam_.union_below(alpha)) {
      out = *closed;
    } else {
      std::vector<CertSet> below, above;
      for (std::size_t i = 0; i < fam_.index.size(); ++i)
        (fam_.index[i] < alpha ? below : above).push_back(fam_.sets[i]);
      out = separation_find(below, above).v;
    }
  }
  return memo_.emplace(alpha, std::move(out)).first->second;
}

Json Chain::verify(const std::vector<Ordinal>& alphas, bool* ok) const {
  Json out = Json::array();
  bool all = true;
  for (const auto& alpha : alphas)
    for (std::size_t i = 0; i < fam_.index.size(); ++i) {
      const Ordinal& xi = fam_.index[i];
      const bool below = xi < alpha;
      AlmostCert c = below ? almost_subset(fam_.sets[i], v(alpha)) : almost_disjoint(fam_.sets[i], v(alpha));
      all = all && c.holds;
      out.push_back(Json{{"alpha", ordinal_json(alpha)},
                         {"xi", ordinal_json(xi)},
                         {"relation", below ? "subset" : "disjoint"},
                         {"cert", c.json()}});
    }
  if (ok) *ok = all;
  return out;
}

Json Census::json() const {
  Json es = Json::array();
  for (const auto& e : entries)
    es.push_back(Json{{"member", e.member}, {"meets_infinitely", !e.meet.holds}, {"cert", e.meet.json()}});
  return Json{{"members", es}, {"almost_covered", residual.holds}, {"residual", residual.json()}};
}

Census mad_census(const std::vector<CertSet>& family, const CertSet& x) {
  Census c;
  CertSet all;
  for (std::size_t i = 0; i < family.size(); ++i) {
    c.entries.push_back({i, almost_disjoint(family[i], x)});
    all = all | family[i];
  }
  c.residual = almost_subset(x, all);
  return c;
}

}  // namespace qf::adf
