#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qf/core/json_io.hpp"

namespace qf::adf {

using Nat = std::int64_t;

class RuleOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// {a + d k : k >= 0}.
struct Progression {
  Nat a = 0;
  Nat d = 1;

  bool contains(Nat x) const { return x >= a && (x - a) % d == 0; }
  // Number of elements < x.
  Nat count_below(Nat x) const { return x <= a ? 0 : (x - a - 1) / d + 1; }
  Nat nth(Nat k) const;
  // Smallest element >= x.
  Nat first_at_least(Nat x) const;
  auto operator<=>(const Progression&) const = default;
};

std::optional<Progression> intersect(const Progression& p, const Progression& q);

// Infinite subset of N given as a disjoint union of progressions, plus a finite
// patch: the set is (union of progressions minus `remove`) plus `add`, with
// `add` disjoint from the progressions and `remove` contained in them.
class CertSet {
 public:
  CertSet() = default;
  CertSet(std::vector<Progression> progs, std::vector<Nat> add, std::vector<Nat> remove);
  static CertSet progression(Nat a, Nat d);
  static CertSet finite(std::vector<Nat> xs);
  static CertSet naturals() { return progression(0, 1); }
  static CertSet range(Nat lo, Nat hi);  // [lo, hi)

  const std::vector<Progression>& progressions() const { return progs_; }
  const std::vector<Nat>& added() const { return add_; }
  const std::vector<Nat>& removed() const { return remove_; }

  bool contains(Nat x) const;
  bool empty() const { return progs_.empty() && add_.empty(); }
  bool infinite() const { return !progs_.empty(); }
  // Elements of a finite set, increasing; throws if infinite.
  std::vector<Nat> elements() const;
  // |S cap [0, x)|.
  Nat count_below(Nat x) const;
  // k-th smallest element (0-based); throws std::out_of_range if absent.
  Nat nth(Nat k) const;
  // First n elements (fewer if the set is finite and small).
  std::vector<Nat> first(Nat n) const;
  std::optional<Nat> min() const;
  // An infinite progression contained in the set, if infinite.
  std::optional<Progression> infinite_witness() const;

  CertSet operator&(const CertSet& o) const;
  CertSet operator|(const CertSet& o) const;
  CertSet operator-(const CertSet& o) const;
  CertSet complement() const { return naturals() - *this; }
  // Image under x -> p x + q with p >= 1.
  CertSet affine_image(Nat p, Nat q) const;

  bool same_as(const CertSet& o) const;  // exact set equality

 private:
  std::vector<Progression> progs_;
  std::vector<Nat> add_;
  std::vector<Nat> remove_;
};

// Certificate for A subset* B: the finite set A \ B, or a progression inside A \ B.
struct AlmostCert {
  bool holds = false;
  std::vector<Nat> exceptions;
  std::optional<Progression> witness;
  Json json() const;
};

AlmostCert almost_subset(const CertSet& a, const CertSet& b);
AlmostCert almost_equal(const CertSet& a, const CertSet& b);  // exceptions = symmetric difference
// A cap B finite, with the intersection as the exception set.
AlmostCert almost_disjoint(const CertSet& a, const CertSet& b);

Json cert_set_json(const CertSet& s);
CertSet cert_set_from(const Json& j);
Json nats_json(const std::vector<Nat>& xs);

}  // namespace qf::adf
