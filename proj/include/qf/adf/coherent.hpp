#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "qf/adf/family.hpp"
#include "qf/adf/nice_ext.hpp"

namespace qf::adf {

class IndexBeyondCap : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// One step t_n of a limit stage: the nice_ext data on the window [w*xi_{n-1}, w*xi_n).
struct LimitStep {
  Ordinal lo, hi;
  std::vector<Position> x;         // where t_{n-1} and s_{xi_n} differ
  std::vector<Position> d1, d2, d3;
  std::map<Position, Nat> h2;      // D3 -> new values
  std::map<Nat, Position> h2_inv;
  Json json() const;
};

// Coherent injections s_alpha : w*alpha -> N for alpha < cap, built lazily over a chain.
// Successor steps enumerate E_xi = A_xi \ W_xi on the fiber I_xi; limits glue t_n's.
class CoherentFamily {
 public:
  CoherentFamily(Family fam, Ordinal cap);

  const Ordinal& cap() const { return cap_; }
  const Chain& chain() const { return chain_; }
  const Family& family() const { return chain_.family(); }

  std::optional<Nat> eval(const Ordinal& alpha, const Position& x) const;
  std::optional<Position> preimage(const Ordinal& alpha, Nat y) const;
  const CertSet& w(const Ordinal& alpha) const;  // ran(s_alpha)
  const CertSet& derived(const Ordinal& xi) const;  // s_{xi+1}[I_xi]
  CertSet fiber_image(const Ordinal& alpha, const Ordinal& zeta) const;  // s_alpha[I_zeta]
  // Positions of w*beta where s_alpha and s_beta differ (beta <= alpha).
  const std::vector<Position>& exceptions(const Ordinal& beta, const Ordinal& alpha) const;
  const LimitStep& step(const Ordinal& limit, Nat n) const;
  Nat steps_built(const Ordinal& limit) const;

 private:
  void check_stage(const Ordinal& alpha) const;
  Nat window_of(const Ordinal& limit, const Ordinal& fiber) const;
  std::optional<Nat> eval_limit(const Ordinal& limit, const Position& x) const;
  std::optional<Position> preimage_limit(const Ordinal& limit, Nat y) const;
  // t_n^{-1}(y) using steps 1..n.
  std::optional<Position> t_inverse(const Ordinal& limit, Nat n, Nat y) const;
  bool owned_by_step(const Ordinal& limit, Nat m, Nat y, Position* out) const;
  void build_step(const Ordinal& limit, Nat n) const;

  Chain chain_;
  Ordinal cap_;
  mutable std::map<Ordinal, CertSet> derived_;
  mutable std::map<Ordinal, std::deque<LimitStep>> steps_;
  mutable std::map<std::pair<Ordinal, Ordinal>, std::vector<Position>> exceptions_;
};

// Index set for h: finite, or cofinite below the cap.
struct BoolIndex {
  std::set<Ordinal> elems;
  bool cofinite = false;
};

// h(U_X) = s_{alpha(X)}[U_X] with alpha(X) = max(X) + 1; cofinite X by complement.
CertSet boolean_mono(const CoherentFamily& cf, const BoolIndex& x);

struct LawReport {
  Nat pairs = 0;
  Nat failures = 0;
  Json json() const { return Json{{"pairs", pairs}, {"failures", failures}}; }
};

// h(X cap Y) =* h(X) cap h(Y), h(X cup Y) =* h(X) cup h(Y), h(X \ Y) =* h(X) \ h(Y) for all
// pairs of subsets of `base`, and disjoint X, Y give almost disjoint images.
LawReport verify_boolean_laws(const CoherentFamily& cf, const std::vector<Ordinal>& base);

// V_F = h(U_F), certified against every listed member of the family.
Separation separator_from_embedding(const CoherentFamily& cf, const std::set<Ordinal>& f);

struct IsoChainConfig {
  Ordinal cap = Ordinal::omega_times(2);
  Nat sample_j = 40;  // positions per fiber used by the pointwise checks
};

struct IsoChainReport {
  std::shared_ptr<CoherentFamily> family;
  std::vector<Ordinal> stages;
  Json derived;     // per listed member: derived set and its =* certificate
  Json pairwise;    // exact finite intersections of the derived sets
  Json coherence;   // per stage pair: exception set and pointwise check
  Json injectivity; // per stage: sampled distinctness, range and preimage round trip
  Json chain;       // chain certificates
  Nat failures = 0;
  Json json() const;
};

IsoChainReport iso_chain(const Family& fam, const IsoChainConfig& cfg);

}  // namespace qf::adf
