#include "qf/core/vector.hpp"

#include <stdexcept>

namespace qf {

WindowVector::WindowVector(Index lo, std::vector<Rational> coords)
    : lo_(lo), coords_(std::move(coords)) {}

WindowVector WindowVector::zeros(Window w) {
  return WindowVector(w.lo, std::vector<Rational>(std::max<Index>(w.size(), 0)));
}

WindowVector WindowVector::unit(Window w, Index i) {
  WindowVector v = zeros(w);
  v[i] = 1;
  return v;
}

Rational WindowVector::sup_norm() const {
  Rational m = 0;
  for (const auto& c : coords_) {
    Rational a = rabs(c);
    if (a > m) m = a;
  }
  return m;
}

Rational WindowVector::l1_norm() const {
  Rational s = 0;
  for (const auto& c : coords_) s += rabs(c);
  return s;
}

bool WindowVector::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

Rational WindowVector::dot(const WindowVector& o) const {
  if (window() != o.window()) throw std::invalid_argument("dot: window mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] != 0 && o.coords_[i] != 0) s += coords_[i] * o.coords_[i];
  return s;
}

WindowVector WindowVector::restrict(Window w) const {
  WindowVector out = zeros(w);
  for (Index i = std::max(w.lo, lo()); i < std::min(w.hi, hi()); ++i) out[i] = (*this)[i];
  return out;
}

WindowVector WindowVector::operator+(const WindowVector& o) const {
  if (window() != o.window()) throw std::invalid_argument("add: window mismatch");
  WindowVector out = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] += o.coords_[i];
  return out;
}

WindowVector WindowVector::operator-(const WindowVector& o) const {
  if (window() != o.window()) throw std::invalid_argument("sub: window mismatch");
  WindowVector out = *this;
  for (std::size_t i = 0; i < coords_.size(); ++i) out.coords_[i] -= o.coords_[i];
  return out;
}

WindowVector WindowVector::operator*(const Rational& s) const {
  WindowVector out = *this;
  for (auto& c : out.coords_) c *= s;
  return out;
}

bool WindowVector::operator==(const WindowVector& o) const {
  return window() == o.window() && coords_ == o.coords_;
}

}  // namespace qf
