#pragma once

#include <compare>
#include <string>

#include "qf/adf/cert_set.hpp"

namespace qf::adf {

// w^2 * c2 + w * c1 + c0.
struct Ordinal {
  Nat c2 = 0;
  Nat c1 = 0;
  Nat c0 = 0;

  static Ordinal finite(Nat n) { return {0, 0, n}; }
  static Ordinal omega_times(Nat a, Nat b = 0) { return {0, a, b}; }

  bool is_zero() const { return c2 == 0 && c1 == 0 && c0 == 0; }
  bool is_limit() const { return !is_zero() && c0 == 0; }
  bool is_successor() const { return c0 > 0; }
  Ordinal succ() const { return {c2, c1, c0 + 1}; }
  Ordinal pred() const;  // successor ordinals only
  Ordinal plus(Nat k) const { return {c2, c1, c0 + k}; }
  // The limit (or zero) part: alpha = limit_part() + c0.
  Ordinal limit_part() const { return {c2, c1, 0}; }
  // Canonical fundamental sequence of a limit: xi_0 = 0, xi_n for n >= 1.
  Ordinal fundamental(Nat n) const;

  std::string str() const;
  auto operator<=>(const Ordinal&) const = default;
};

Ordinal parse_ordinal(const std::string& s);  // "w^2*2+w*3+4", "w", "w*2", "7"; "ω" accepted for "w"
Json ordinal_json(const Ordinal& o);          // [c2, c1, c0]
Ordinal ordinal_from(const Json& j);          // [c2, c1, c0] or a string

// Position w * fiber + j inside w * alpha.
struct Position {
  Ordinal fiber;
  Nat j = 0;
  auto operator<=>(const Position&) const = default;
};

Json position_json(const Position& p);  // {"fiber": [...], "j": j}

}  // namespace qf::adf
