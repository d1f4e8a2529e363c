#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qf/core/json_io.hpp"
#include "qf/geom/subspace.hpp"

namespace qf::geom {

struct ExtensionConfig {
  Rational rho = 4;
  Rational c1 = 1;
  Rational c2 = 64;
  Rational delta = Rational(1, 100);
  // Accepted distortion of the complement map is at most this value (budget squared).
  Rational complement_budget_sq = 64;
  std::size_t vertex_cap = kDefaultVertexCap;

  void validate() const;
};

class PreconditionFailed : public GeomError {
 public:
  using GeomError::GeomError;
};

class ComplementNotFound : public GeomError {
 public:
  using GeomError::GeomError;
};

class NormBudget : public GeomError {
 public:
  NormBudget(const std::string& what, Rational measured, Rational bound);
  Rational measured;
  Rational bound;
};

struct Projection {
  RMatrix matrix;                         // ambient x ambient
  std::vector<WindowVector> representers;  // rows of U
  Rational norm;                          // op_norm_inf(matrix)
  Rational norm_bound;                    // ||S^-1|| * max_j ||u_j||_1
};

// P = V s^-1 U where s is the matrix of S (S(v_k) = column k) and U the
// Hahn-Banach representers of the coordinate functionals of S.
Projection build_projection(const Subspace& y, const LinMap& s);

// Coordinate witness v_k -> e_k into l_inf^h.
LinMap coordinate_witness(const Subspace& y);

// Subspace in graph form over free coordinates J: basis vector t is 1 at J[t],
// 0 on the other free coordinates.
struct GraphBasis {
  Window ambient;
  std::vector<Index> free;  // J, increasing
  RMatrix matrix;           // ambient x |J|
};

struct ComplementMatch {
  GraphBasis z1;
  GraphBasis z2;
  std::vector<std::size_t> sigma;  // column t of z1 -> column sigma[t] of z2
  int stage = 0;
  Rational norm_bound;      // >= ||Q||
  Rational inv_norm_bound;  // >= ||Q^-1||
  LinMap q;
};

ComplementMatch complement_iso(const Subspace& z1, const Subspace& z2,
                               const Rational& budget_sq);

struct Rescale {
  Rational s;
  Rational norm;      // s * a
  Rational inv_norm;  // b / s
};

// Rational s with max(s a, b / s)^2 <= (1 + delta)^2 a b, for a = ||Q||, b = ||Q^-1||.
Rescale balanced_rescale(const Rational& a, const Rational& b, const Rational& delta);
// Exact-norm form on a LinMap; returns s Q.
LinMap balanced_rescale(const LinMap& q, const Rational& delta, Rescale* info = nullptr);

struct Extension {
  RMatrix w;
  RMatrix w_inv;
  Rational norm;
  Rational inv_norm;
  Rational t_norm;
  Rational t_inv_norm;
  Rational s1_distortion;
  Rational s2_distortion;
  Rational p1_norm;
  Rational p2_norm;
  int complement_stage = 0;
  Rational q_norm_bound;
  Rational q_inv_norm_bound;
  Rational scale;

  Json report() const;
};

// Automorphism W of l_inf on the ambient window with W v_k = T v_k.
Extension extend_isomorphism(const LinMap& t, const std::optional<LinMap>& s1,
                             const std::optional<LinMap>& s2, const ExtensionConfig& config);

// Independent check of an extension: basis agreement, inverse, norm budget.
struct ExtensionCheck {
  bool agrees = false;
  bool inverse_ok = false;
  bool norms_ok = false;
  Rational norm;
  Rational inv_norm;
  bool ok() const { return agrees && inverse_ok && norms_ok; }
};
ExtensionCheck verify_extension(const LinMap& t, const RMatrix& w, const Rational& c2);

Json subspace_json(const Subspace& y);
Subspace subspace_from(const Json& j);
Json linmap_json(const LinMap& t);
LinMap linmap_from(const Json& j);

}  // namespace qf::geom
