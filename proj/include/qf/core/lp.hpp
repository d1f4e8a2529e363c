#pragma once

#include <stdexcept>
#include <vector>

#include "qf/core/rational.hpp"

namespace qf {

class Infeasible : public std::runtime_error {
 public:
  Infeasible() : std::runtime_error("linear system is infeasible") {}
};

struct L1Solution {
  std::vector<Rational> u;     // optimal point
  Rational value;              // sum |u_i|
  std::vector<Rational> dual;  // y with |(A^T y)_i| <= 1 and <b, y> = value
};

// min ||u||_1 subject to A u = b (A given by rows, each of length n).
// Two-phase simplex with Bland's rule. Throws Infeasible.
L1Solution lp_min_l1(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                     std::size_t n);

}  // namespace qf
