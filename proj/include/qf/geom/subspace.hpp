#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qf/core/matrix.hpp"
#include "qf/core/polytope.hpp"
#include "qf/core/vector.hpp"

namespace qf::geom {

class GeomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotIndependent : public GeomError {
 public:
  NotIndependent() : GeomError("basis vectors are linearly dependent") {}
};

class NotInvertible : public GeomError {
 public:
  using GeomError::GeomError;
};

// Subspace of l_inf on an ambient window, with a fixed independent basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Window ambient, std::vector<WindowVector> basis);
  static Subspace whole(Window ambient);

  Window ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<WindowVector>& basis() const { return basis_; }

  // Ambient x dim matrix whose columns are the basis vectors.
  RMatrix matrix() const;
  // One point per ambient coordinate: (v_1[i], ..., v_h[i]).
  std::vector<Point> coordinate_rows() const;
  WindowVector combine(const std::vector<Rational>& c) const;
  // Coefficients of v in this basis, or nullopt if v is not in the span.
  std::optional<std::vector<Rational>> coefficients(const WindowVector& v) const;

 private:
  Window ambient_;
  std::vector<WindowVector> basis_;
};

// Linear map given by the images of a domain basis.
class LinMap {
 public:
  LinMap() = default;
  LinMap(Subspace domain, Window codomain, std::vector<WindowVector> images);
  // Images must lie in `codomain_space`.
  LinMap(Subspace domain, Subspace codomain_space, std::vector<WindowVector> images);

  const Subspace& domain() const { return domain_; }
  Window codomain() const { return codomain_; }
  const std::optional<Subspace>& codomain_space() const { return codomain_space_; }
  const std::vector<WindowVector>& images() const { return images_; }

  RMatrix image_matrix() const;  // codomain x dim
  std::vector<Point> image_rows() const;
  WindowVector apply(const std::vector<Rational>& c) const;
  LinMap scaled(const Rational& s) const;

 private:
  Subspace domain_;
  Window codomain_;
  std::optional<Subspace> codomain_space_;
  std::vector<WindowVector> images_;
};

struct LowerBound {
  Rational value;                 // largest r with r||x|| <= ||Tx||
  std::vector<Rational> witness;  // coefficients of an x attaining it
};

// Vertex-enumeration route; throws DimensionCapExceeded above `cap`.
LowerBound lower_bound(const LinMap& t, std::size_t cap = kDefaultVertexCap);
// LP-duality route; no dimension cap.
LowerBound lower_bound_lp(const LinMap& t);

// ||T|| over the domain's sup norm, via LP duality.
Rational op_norm(const LinMap& t);

struct HahnBanach {
  WindowVector u;  // representer on the ambient window
  Rational norm;   // ||u||_1 = dual norm of phi on Y
};

HahnBanach hahn_banach_extend(const Subspace& y, const std::vector<Rational>& phi);

// Dual norm of phi on Y by vertex enumeration of Y's unit ball.
Rational dual_norm_vertex(const Subspace& y, const std::vector<Rational>& phi,
                          std::size_t cap = kDefaultVertexCap);

}  // namespace qf::geom
