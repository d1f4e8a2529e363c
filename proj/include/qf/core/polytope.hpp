#pragma once

#include <stdexcept>
#include <vector>

#include "qf/core/rational.hpp"

namespace qf {

class Unbounded : public std::runtime_error {
 public:
  Unbounded() : std::runtime_error("constraint set is not full rank") {}
};

class DimensionCapExceeded : public std::runtime_error {
 public:
  DimensionCapExceeded(std::size_t dim, std::size_t cap);
};

inline constexpr std::size_t kDefaultVertexCap = 6;

using Point = std::vector<Rational>;

// Vertices of {c : |<a_i, c>| <= 1 for all i}, sorted lexicographically.
std::vector<Point> vertex_enumerate(const std::vector<Point>& constraints, std::size_t dim,
                                    std::size_t cap = kDefaultVertexCap);

// Removes zero rows and rows equal up to sign (first occurrence kept, sign normalized).
// `origin[k]` is the input index of the k-th surviving row and `sign[k]` = +-1 with
// surviving row = sign * input row.
std::vector<Point> dedupe_rows(const std::vector<Point>& rows, std::vector<std::size_t>* origin,
                               std::vector<int>* sign = nullptr);

struct BallMax {
  Rational value;  // max |<q, c>| over the ball
  Point argmax;    // a maximizer c
};

// max |<q, c>| over {c : |<a_i, c>| <= 1}, by LP duality:
// equals min ||u||_1 subject to sum u_i a_i = q. Throws Unbounded if q is not in
// the row space of the constraints (the maximum is infinite).
BallMax ball_max_linear(const std::vector<Point>& constraints, const Point& q, std::size_t dim);

// max over the ball of max_j |<q_j, c>|, i.e. the largest |row| value.
struct BallMaxRows {
  Rational value;
  Point argmax;
  std::size_t row = 0;  // index of the attaining row
};
BallMaxRows ball_max_rows(const std::vector<Point>& constraints, const std::vector<Point>& rows,
                          std::size_t dim);

// Same quantity via vertex enumeration (bounded by the dimension cap).
BallMaxRows ball_max_rows_vertex(const std::vector<Point>& constraints,
                                 const std::vector<Point>& rows, std::size_t dim,
                                 std::size_t cap = kDefaultVertexCap);

}  // namespace qf
