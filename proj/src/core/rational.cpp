#include "qf/core/rational.hpp"

#include <limits>

namespace qf {

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw ParseError("empty rational");
  Rational r;
  if (r.set_str(str, 10) != 0) throw ParseError("bad rational: " + str);
  if (r.get_den() == 0) throw ParseError("zero denominator: " + str);
  r.canonicalize();
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  Integer l = lcm(Integer(static_cast<long>(a)), Integer(static_cast<long>(b)));
  if (!l.fits_slong_p()) throw std::overflow_error("lcm overflow");
  return l.get_si();
}

}  // namespace qf
