#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qf/adf/ordinal.hpp"

namespace qf::adf {

class ParameterCap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChainViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FamilyKind { Progression, Branch, Luzin, Explicit };

FamilyKind family_kind_from(const std::string& s);
std::string family_kind_name(FamilyKind k);

struct FamilyGenerator {
  FamilyKind kind = FamilyKind::Progression;
  Nat count = 3;    // members (luzin: N)
  Nat depth = 4;    // branch tree depth
  Nat blocks = 1;   // progression: members are w*a + b with a < blocks
  Nat horizon = 64; // luzin invariant is checked for n <= horizon
  std::vector<CertSet> sets;  // explicit kind
};

struct PairCert {
  std::size_t i = 0, j = 0;
  AlmostCert cert;
};

struct LuzinReport {
  Nat n_sets = 0;
  Nat horizon = 0;
  // For each n <= horizon: the largest |{b < a : A_a cap A_b subset [0, n)}| over a.
  std::vector<Nat> worst;
  std::vector<Nat> bound;  // L(n) = ceil(n / N)
  bool ok = false;
  Json json() const;
};

// Indexed family of CertSets. Progression families are uniform: every index below
// w * blocks has a member, even beyond the listed ones.
struct Family {
  FamilyKind kind = FamilyKind::Explicit;
  std::vector<Ordinal> index;
  std::vector<CertSet> sets;
  Nat blocks = 0;  // > 0 for the uniform progression generator
  std::vector<PairCert> pairwise;
  std::optional<LuzinReport> luzin;

  bool uniform() const { return blocks > 0; }
  bool has(const Ordinal& xi) const;
  CertSet member(const Ordinal& xi) const;
  // Closed form of the union of all members below a limit, when known.
  std::optional<CertSet> union_below(const Ordinal& limit) const;
  bool almost_disjoint() const;
  Json json() const;
};

Family make_family(const FamilyGenerator& gen);
Family family_from(const Json& j);  // {"kind", "index", "sets"} or a plain list of sets
// Member w*a + b of the progression generator with k blocks.
CertSet progression_member(Nat blocks, const Ordinal& xi);

AlmostCert almost_disjoint_check(const CertSet& a, const CertSet& b);

struct Separation {
  CertSet v;
  std::vector<AlmostCert> inside;   // A subset* V for the B-family
  std::vector<AlmostCert> outside;  // A cap V finite for the C-family
  bool ok() const;
  Json json() const;
};

// V = union of the B-family minus the finite overlaps with the C-family.
Separation separation_find(const std::vector<CertSet>& bs, const std::vector<CertSet>& cs);
Separation certify_separation(const CertSet& v, const std::vector<CertSet>& bs,
                              const std::vector<CertSet>& cs);

// V_0 = empty, V_{a+1} = V_a cup A_a, limits by closed form or separation of the listed members.
class Chain {
 public:
  explicit Chain(Family fam) : fam_(std::move(fam)) {}
  const Family& family() const { return fam_; }
  const CertSet& v(const Ordinal& alpha) const;
  // Certificates of A_xi subset* V_alpha (xi < alpha) and A_xi cap V_alpha finite (xi >= alpha)
  // over the listed members.
  Json verify(const std::vector<Ordinal>& alphas, bool* ok = nullptr) const;

 private:
  Family fam_;
  mutable std::map<Ordinal, CertSet> memo_;
};

struct CensusEntry {
  std::size_t member = 0;
  AlmostCert meet;  // holds when A cap X is finite
};

struct Census {
  std::vector<CensusEntry> entries;
  AlmostCert residual;  // holds when X minus the union is finite
  Json json() const;
};

Census mad_census(const std::vector<CertSet>& family, const CertSet& x);

}  // namespace qf::adf
