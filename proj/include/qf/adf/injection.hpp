#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qf/adf/cert_set.hpp"

namespace qf::adf {

// x -> p x + q on `domain`.
struct AffinePiece {
  CertSet domain;
  Nat p = 1;
  Nat q = 0;
};

struct InjectivityReport {
  bool ok = true;
  std::string reason;
  Json json() const { return Json{{"ok", ok}, {"reason", reason}}; }
};

// Partial map N -> N: affine pieces on pairwise disjoint domains, overridden by a finite patch.
class AffineInjection {
 public:
  AffineInjection() = default;
  AffineInjection(std::vector<AffinePiece> pieces, std::map<Nat, Nat> patch);
  static AffineInjection affine(const CertSet& domain, Nat p, Nat q);

  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const std::map<Nat, Nat>& patch() const { return patch_; }

  std::optional<Nat> operator()(Nat x) const;
  std::optional<Nat> preimage(Nat y) const;
  CertSet domain() const;
  CertSet image() const;
  CertSet image_of(const CertSet& s) const;
  // Piece domain with the patch keys removed.
  CertSet effective_domain(std::size_t piece) const;

  AffineInjection restricted(const CertSet& s) const;
  // Same map with the given point overrides applied on top.
  AffineInjection overridden(const std::map<Nat, Nat>& extra) const;

  // Rule-level check: piece images pairwise disjoint, patch values distinct and off the pieces.
  InjectivityReport injectivity() const;

 private:
  std::vector<AffinePiece> pieces_;
  std::map<Nat, Nat> patch_;
};

// Points of `on` where f and g differ (including where exactly one is defined).
AlmostCert differences(const AffineInjection& f, const AffineInjection& g, const CertSet& on);

Json injection_json(const AffineInjection& f);
AffineInjection injection_from(const Json& j);

}  // namespace qf::adf
