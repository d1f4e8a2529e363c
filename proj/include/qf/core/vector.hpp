#pragma once

#include <cstdint>
#include <vector>

#include "qf/core/rational.hpp"

namespace qf {

using Index = std::int64_t;

// Half-open integer window [lo, hi).
struct Window {
  Index lo = 0;
  Index hi = 0;

  Index size() const { return hi - lo; }
  bool empty() const { return hi <= lo; }
  bool contains(Index i) const { return lo <= i && i < hi; }
  bool operator==(const Window&) const = default;
};

class WindowVector {
 public:
  WindowVector() = default;
  WindowVector(Index lo, std::vector<Rational> coords);
  static WindowVector zeros(Window w);
  static WindowVector unit(Window w, Index i);

  Window window() const { return {lo_, lo_ + static_cast<Index>(coords_.size())}; }
  Index lo() const { return lo_; }
  Index hi() const { return lo_ + static_cast<Index>(coords_.size()); }
  Index size() const { return static_cast<Index>(coords_.size()); }

  // Absolute indexing.
  const Rational& operator[](Index i) const { return coords_[i - lo_]; }
  Rational& operator[](Index i) { return coords_[i - lo_]; }
  const std::vector<Rational>& coords() const { return coords_; }

  Rational sup_norm() const;
  Rational l1_norm() const;
  bool is_zero() const;
  Rational dot(const WindowVector& other) const;  // windows must match

  WindowVector restrict(Window w) const;  // zero outside own window
  WindowVector operator+(const WindowVector& o) const;
  WindowVector operator-(const WindowVector& o) const;
  WindowVector operator*(const Rational& s) const;

  bool operator==(const WindowVector& o) const;

 private:
  Index lo_ = 0;
  std::vector<Rational> coords_;
};

}  // namespace qf
