#pragma once

#include <string>
#include <vector>

#include "qf/core/polytope.hpp"
#include "qf/geom/subspace.hpp"
#include "qf/quotient/tail_vector.hpp"

namespace qf::quotient {

class NotInjective : public std::runtime_error {
 public:
  NotInjective() : std::runtime_error("quotient map is not injective on the span") {}
};

class NotInvertible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr Index kDefaultLcmCap = Index{1} << 20;

// Coefficient-space view of span{f_k}: rows of the prefix [0, m) and of one
// aligned period [m, m + L). In horizon mode (period lcm above the cap) the
// "period" rows are the rows of [m, horizon) and tail claims hold to the horizon only.
struct TailSpan {
  std::size_t dim = 0;
  Index prefix_length = 0;
  Index period_length = 1;
  bool horizon_mode = false;
  Index horizon = 0;
  std::vector<Point> prefix_rows;
  std::vector<Point> period_rows;
};

TailSpan make_span(const std::vector<TailVector>& vs, Index lcm_cap = kDefaultLcmCap,
                   Index horizon = 0);

bool pi_injective(const TailSpan& s);

enum class LiftDirection { TailLift, PrefixRestriction };

struct LiftWindow {
  Index n = 0;
  Rational epsilon;
  LiftDirection direction = LiftDirection::TailLift;
  Rational worst;  // largest certified row maximum at the returned N (<= 1/(1-eps))
  bool horizon_mode = false;
  Json json() const;
};

// N with (1-eps) ||y_[N,inf)|| <= ||pi(y)|| for all y in the span.
LiftWindow lifting_index(const TailSpan& s, const Rational& epsilon);
// N with (1-eps) ||y|| <= ||y_[0,N)|| for all y in the span.
LiftWindow restriction_index(const TailSpan& s, const Rational& epsilon);

// ||Pi_{F,a,n}||: max of ||y_[n,inf)|| over ||pi(y)|| <= 1 on span{f_k}.
Rational pi_section_norm(const std::vector<TailVector>& fs, Index n,
                         Index lcm_cap = kDefaultLcmCap);

// R = P_[0,n') o Pi_{F,a,n}, from the period-pattern copy of the quotient span
// (isometric to it) into l_inf on [n, n').
geom::LinMap r_operator(const std::vector<TailVector>& fs, Index n, Index n2,
                        Index lcm_cap = kDefaultLcmCap);
// ||R^-1||; throws NotInvertible when the restriction is not injective.
Rational r_operator_inverse_norm(const std::vector<TailVector>& fs, Index n, Index n2,
                                 Index lcm_cap = kDefaultLcmCap);

}  // namespace qf::quotient
