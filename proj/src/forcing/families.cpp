#include "qf/forcing/families.hpp"

#include <algorithm>

#include "qf/quotient/windows.hpp"

namespace qf::forcing {

bool PairedFamilies::has(Index xi) const {
  return std::find(index.begin(), index.end(), xi) != index.end();
}

std::size_t PairedFamilies::position(Index xi) const {
  auto it = std::find(index.begin(), index.end(), xi);
  if (it == index.end()) throw ForcingError("index " + std::to_string(xi) + " is not in the family");
  return static_cast<std::size_t>(it - index.begin());
}

std::vector<TailVector> PairedFamilies::f_of(const std::vector<Index>& a) const {
  std::vector<TailVector> out;
  for (Index xi : a) out.push_back(f_at(xi));
  return out;
}

std::vector<TailVector> PairedFamilies::g_of(const std::vector<Index>& a) const {
  std::vector<TailVector> out;
  for (Index xi : a) out.push_back(g_at(xi));
  return out;
}

Index PairedFamilies::period_lcm(const std::vector<Index>& a) const {
  Index l = 1;
  for (Index xi : a) {
    l = lcm64(l, f_at(xi).period_length());
    l = lcm64(l, g_at(xi).period_length());
  }
  return l;
}

Index PairedFamilies::prefix_max(const std::vector<Index>& a) const {
  Index m = 0;
  for (Index xi : a) m = std::max({m, f_at(xi).prefix_length(), g_at(xi).prefix_length()});
  return m;
}

std::vector<std::string> check_families(const PairedFamilies& fam) {
  std::vector<std::string> out;
  if (fam.f.size() != fam.index.size() || fam.g.size() != fam.index.size())
    return {"index, f and g differ in length"};
  std::vector<Index> sorted = fam.index;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) out.push_back("repeated index");
  for (std::size_t k = 0; k < fam.size(); ++k) {
    const std::string xi = std::to_string(fam.index[k]);
    for (const auto* v : {&fam.f[k], &fam.g[k]}) {
      const char* name = v == &fam.f[k] ? "f_" : "g_";
      if (v->sup_norm() != quotient::quotient_norm(*v))
        out.push_back(std::string(name) + xi + " is not normalized: ||f|| = " + to_string(v->sup_norm()) +
                      ", ||pi f|| = " + to_string(quotient::quotient_norm(*v)));
    }
  }
  if (fam.size() > 0) {
    if (!quotient::pi_injective(quotient::make_span(fam.f))) out.push_back("pi is not injective on span F");
    if (!quotient::pi_injective(quotient::make_span(fam.g))) out.push_back("pi is not injective on span G");
  }
  return out;
}

TailVector indicator_tail(const adf::CertSet& s) {
  Index m = 0, L = 1;
  for (const auto& p : s.progressions()) {
    m = std::max(m, p.a);
    L = lcm64(L, p.d);
  }
  for (Index x : s.added()) m = std::max(m, x + 1);
  for (Index x : s.removed()) m = std::max(m, x + 1);
  std::vector<Rational> pre, per;
  for (Index i = 0; i < m; ++i) pre.emplace_back(s.contains(i) ? 1 : 0);
  for (Index i = 0; i < L; ++i) per.emplace_back(s.contains(m + i) ? 1 : 0);
  return TailVector(std::move(pre), std::move(per)).canonical();
}

PairedFamilies paired_from_adf(const adf::Family& from, const adf::Family& to, const Rational& rho) {
  PairedFamilies fam;
  fam.rho = rho;
  const std::size_t k = std::min(from.sets.size(), to.sets.size());
  for (std::size_t i = 0; i < k; ++i) {
    fam.index.push_back(static_cast<Index>(i));
    fam.f.push_back(indicator_tail(from.sets[i]));
    fam.g.push_back(indicator_tail(to.sets[i]));
  }
  return fam;
}

PairedFamilies branch_to_progression(Index kappa, const Rational& rho) {
  if (kappa < 1 || kappa > 32) throw ForcingError("kappa must be in [1, 32]");
  Index depth = 1;
  while ((Index{1} << depth) < kappa) ++depth;
  adf::FamilyGenerator b;
  b.kind = adf::FamilyKind::Branch;
  b.count = kappa;
  b.depth = depth;
  adf::FamilyGenerator p;
  p.kind = adf::FamilyKind::Progression;
  p.count = kappa;
  p.blocks = 1;
  return paired_from_adf(adf::make_family(b), adf::make_family(p), rho);
}

PairedFamilies singleton_indicators(const Rational& rho) {
  PairedFamilies fam;
  fam.rho = rho;
  fam.index = {0};
  fam.f = {indicator_tail(adf::CertSet::progression(0, 2))};
  fam.g = {indicator_tail(adf::CertSet::progression(1, 3))};
  return fam;
}

Json paired_json(const PairedFamilies& fam) {
  Json f = Json::array(), g = Json::array();
  for (const auto& v : fam.f) f.push_back(quotient::tail_json(v));
  for (const auto& v : fam.g) g.push_back(quotient::tail_json(v));
  return Json{{"index", fam.index}, {"f", f}, {"g", g}, {"rho", rational_json(fam.rho)}};
}

PairedFamilies paired_from(const Json& j) {
  const Rational rho = j.contains("rho") ? rational_from(j.at("rho")) : Rational(4);
  if (j.contains("F") && j.contains("G"))
    return paired_from_adf(adf::family_from(j.at("F")), adf::family_from(j.at("G")), rho);
  PairedFamilies fam;
  fam.rho = rho;
  for (const auto& v : j.at("f")) fam.f.push_back(quotient::tail_from(v));
  for (const auto& v : j.at("g")) fam.g.push_back(quotient::tail_from(v));
  if (j.contains("index")) {
    fam.index = j.at("index").get<std::vector<Index>>();
  } else {
    for (std::size_t i = 0; i < fam.f.size(); ++i) fam.index.push_back(static_cast<Index>(i));
  }
  if (fam.index.size() != fam.f.size() || fam.g.size() != fam.f.size())
    throw ParseError("family index, f and g differ in length");
  return fam;
}

}  // namespace qf::forcing
