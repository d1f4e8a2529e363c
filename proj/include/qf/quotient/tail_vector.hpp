#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qf/core/json_io.hpp"
#include "qf/core/vector.hpp"

namespace qf::quotient {

// Element of l_inf: explicit prefix on [0, m), then `period` repeated forever.
class TailVector {
 public:
  TailVector() : period_{Rational(0)} {}
  TailVector(std::vector<Rational> prefix, std::vector<Rational> period);

  Index prefix_length() const { return static_cast<Index>(prefix_.size()); }
  Index period_length() const { return static_cast<Index>(period_.size()); }
  const std::vector<Rational>& prefix() const { return prefix_; }
  const std::vector<Rational>& period() const { return period_; }

  Rational at(Index i) const;
  WindowVector window(Window w) const;
  Rational sup_norm() const;
  // ||f restricted to [k, inf)||.
  Rational tail_sup_norm(Index k) const;
  bool eventually_zero() const;

  // Same vector written with prefix length m and period length L.
  TailVector aligned(Index m, Index L) const;
  // Minimal period, then minimal prefix.
  TailVector canonical() const;

  TailVector operator+(const TailVector& o) const;
  TailVector operator-(const TailVector& o) const;
  TailVector operator*(const Rational& s) const;
  bool operator==(const TailVector& o) const;  // equal as sequences

 private:
  std::vector<Rational> prefix_;
  std::vector<Rational> period_;
};

// limsup |f| = max |period|.
Rational quotient_norm(const TailVector& f);
// Classes modulo c_0 agree.
bool equal_mod_c0(const TailVector& f, const TailVector& g);

Json tail_json(const TailVector& f);
TailVector tail_from(const Json& j);

}  // namespace qf::quotient
