#include "qf/adf/injection.hpp"

#include <algorithm>
#include <set>

namespace qf::adf {

namespace {

CertSet keys_of(const std::map<Nat, Nat>& m) {
  std::vector<Nat> ks;
  for (const auto& [k, v] : m) ks.push_back(k);
  return CertSet::finite(std::move(ks));
}

}  // namespace

AffineInjection::AffineInjection(std::vector<AffinePiece> pieces, std::map<Nat, Nat> patch)
    : pieces_(std::move(pieces)), patch_(std::move(patch)) {
  for (const auto& pc : pieces_)
    if (pc.p < 1) throw std::invalid_argument("affine piece needs p >= 1");
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    for (std::size_t j = i + 1; j < pieces_.size(); ++j)
      if (!(pieces_[i].domain & pieces_[j].domain).empty())
        throw std::invalid_argument("affine piece domains must be disjoint");
  std::erase_if(pieces_, [](const AffinePiece& pc) { return pc.domain.empty(); });
}

AffineInjection AffineInjection::affine(const CertSet& domain, Nat p, Nat q) {
  return AffineInjection({{domain, p, q}}, {});
}

std::optional<Nat> AffineInjection::operator()(Nat x) const {
  if (auto it = patch_.find(x); it != patch_.end()) return it->second;
  for (const auto& pc : pieces_)
    if (pc.domain.contains(x)) return pc.p * x + pc.q;
  return std::nullopt;
}

std::optional<Nat> AffineInjection::preimage(Nat y) const {
  for (const auto& [k, v] : patch_)
    if (v == y) return k;
  for (const auto& pc : pieces_) {
    if (y < pc.q || (y - pc.q) % pc.p != 0) continue;
    Nat x = (y - pc.q) / pc.p;
    if (pc.domain.contains(x) && !patch_.count(x)) return x;
  }
  return std::nullopt;
}

CertSet AffineInjection::domain() const {
  CertSet d = keys_of(patch_);
  for (const auto& pc : pieces_) d = d | pc.domain;
  return d;
}

CertSet AffineInjection::effective_domain(std::size_t piece) const {
  return pieces_.at(piece).domain - keys_of(patch_);
}

CertSet AffineInjection::image() const { return image_of(domain()); }

CertSet AffineInjection::image_of(const CertSet& s) const {
  std::vector<Nat> vals;
  for (const auto& [k, v] : patch_)
    if (s.contains(k)) vals.push_back(v);
  CertSet out = CertSet::finite(std::move(vals));
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    out = out | (effective_domain(i) & s).affine_image(pieces_[i].p, pieces_[i].q);
  return out;
}

AffineInjection AffineInjection::restricted(const CertSet& s) const {
  std::vector<AffinePiece> ps;
  for (const auto& pc : pieces_) ps.push_back({pc.domain & s, pc.p, pc.q});
  std::map<Nat, Nat> patch;
  for (const auto& [k, v] : patch_)
    if (s.contains(k)) patch[k] = v;
  return AffineInjection(std::move(ps), std::move(patch));
}

AffineInjection AffineInjection::overridden(const std::map<Nat, Nat>& extra) const {
  auto patch = patch_;
  for (const auto& [k, v] : extra) patch[k] = v;
  return AffineInjection(pieces_, std::move(patch));
}

InjectivityReport AffineInjection::injectivity() const {
  std::vector<CertSet> images;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    images.push_back(effective_domain(i).affine_image(pieces_[i].p, pieces_[i].q));
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      CertSet both = images[i] & images[j];
      if (!both.empty())
        return {false, "pieces " + std::to_string(i) + " and " + std::to_string(j) + " share value " +
                           std::to_string(*both.min())};
    }
  std::set<Nat> seen;
  for (const auto& [k, v] : patch_) {
    if (!seen.insert(v).second) return {false, "patch repeats value " + std::to_string(v)};
    for (const auto& img : images)
      if (img.contains(v)) return {false, "patch value " + std::to_string(v) + " hit by a piece"};
  }
  return {};
}

AlmostCert differences(const AffineInjection& f, const AffineInjection& g, const CertSet& on) {
  AlmostCert cert;
  std::set<Nat> bad;
  auto note_infinite = [&](const CertSet& s) {
    if (!s.infinite()) return false;
    cert.witness = s.infinite_witness();
    return true;
  };
  CertSet df = f.domain() & on;
  CertSet dg = g.domain() & on;
  CertSet mismatch = (df - dg) | (dg - df);
  if (note_infinite(mismatch)) return cert;
  for (Nat x : mismatch.elements()) bad.insert(x);
  CertSet keys = keys_of(f.patch()) | keys_of(g.patch());
  for (Nat x : keys.elements())
    if (on.contains(x) && f(x) != g(x)) bad.insert(x);
  for (std::size_t i = 0; i < f.pieces().size(); ++i)
    for (std::size_t j = 0; j < g.pieces().size(); ++j) {
      const auto& a = f.pieces()[i];
      const auto& b = g.pieces()[j];
      if (a.p == b.p && a.q == b.q) continue;
      CertSet common = (a.domain & b.domain & on) - keys;
      if (note_infinite(common)) return cert;
      for (Nat x : common.elements())
        if (a.p * x + a.q != b.p * x + b.q) bad.insert(x);
    }
  cert.holds = true;
  cert.exceptions.assign(bad.begin(), bad.end());
  return cert;
}

Json injection_json(const AffineInjection& f) {
  Json pieces = Json::array();
  for (const auto& pc : f.pieces())
    pieces.push_back(Json{{"domain", cert_set_json(pc.domain)}, {"p", pc.p}, {"q", pc.q}});
  Json patch = Json::array();
  for (const auto& [k, v] : f.patch()) patch.push_back(Json::array({k, v}));
  return Json{{"pieces", pieces}, {"patch", patch}};
}

AffineInjection injection_from(const Json& j) {
  std::vector<AffinePiece> pieces;
  for (const auto& pc : j.value("pieces", Json::array()))
    pieces.push_back({cert_set_from(pc.at("domain")), pc.value("p", Nat{1}), pc.value("q", Nat{0})});
  std::map<Nat, Nat> patch;
  for (const auto& kv : j.value("patch", Json::array())) {
    if (!kv.is_array() || kv.size() != 2) throw ParseError("patch entries must be [x, y]");
    patch[kv[0].get<Nat>()] = kv[1].get<Nat>();
  }
  return AffineInjection(std::move(pieces), std::move(patch));
}

}  // namespace qf::adf
