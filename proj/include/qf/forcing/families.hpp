#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qf/adf/family.hpp"
#include "qf/core/json_io.hpp"
#include "qf/quotient/tail_vector.hpp"

namespace qf::forcing {

using quotient::TailVector;

class ForcingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// f_xi and g_xi for xi in a finite index set.
struct PairedFamilies {
  std::vector<Index> index;
  std::vector<TailVector> f;
  std::vector<TailVector> g;
  Rational rho = 4;

  std::size_t size() const { return index.size(); }
  bool has(Index xi) const;
  std::size_t position(Index xi) const;  // throws ForcingError outside the index set
  const TailVector& f_at(Index xi) const { return f[position(xi)]; }
  const TailVector& g_at(Index xi) const { return g[position(xi)]; }
  std::vector<TailVector> f_of(const std::vector<Index>& a) const;
  std::vector<TailVector> g_of(const std::vector<Index>& a) const;
  // Lcm of the tail periods of f_xi and g_xi over xi in a.
  Index period_lcm(const std::vector<Index>& a) const;
  Index prefix_max(const std::vector<Index>& a) const;
};

// Problems with normalization, rationality of shape, or injectivity of pi.
std::vector<std::string> check_families(const PairedFamilies& fam);

// Indicator of a CertSet as a periodic tail vector.
TailVector indicator_tail(const adf::CertSet& s);

// f_xi = 1_{A_xi}, g_xi = 1_{B_xi} over the first min(|F|, |G|) members.
PairedFamilies paired_from_adf(const adf::Family& from, const adf::Family& to, const Rational& rho);

// Branch family of depth d with kappa = 2^d leaves, mapped to the kappa-member
// progression family with one block.
PairedFamilies branch_to_progression(Index kappa, const Rational& rho = 4);
// Single index: f_0 = 1_{evens}, g_0 = 1_{3N+1}.
PairedFamilies singleton_indicators(const Rational& rho = 4);

Json paired_json(const PairedFamilies& fam);
// Accepts {"index", "f", "g", "rho"} or {"F": family, "G": family, "rho"}.
PairedFamilies paired_from(const Json& j);

}  // namespace qf::forcing
