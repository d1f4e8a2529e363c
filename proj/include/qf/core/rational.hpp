#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qf {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical "p/q" form, denominator always present.
std::string to_string(const Rational& r);

// Accepts "p", "p/q" and "-p/q"; result is canonicalized.
Rational parse_rational(std::string_view s);

// Canonicalized p/q; mpq_class(p, q) alone does not reduce.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Integer lcm(const Integer& a, const Integer& b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);  // throws on overflow

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qf
