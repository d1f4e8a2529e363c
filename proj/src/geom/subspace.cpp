#include "qf/geom/subspace.hpp"

#include "qf/core/lp.hpp"

namespace qf::geom {

namespace {

// A nonzero kernel vector of the rows (each of length h), assuming rank < h.
std::vector<Rational> kernel_vector(const std::vector<Point>& rows, std::size_t h) {
  Echelon e = rref(rows, h);
  std::vector<bool> is_pivot(h, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::size_t f = 0;
  while (is_pivot[f]) ++f;
  std::vector<Rational> c(h);
  c[f] = 1;
  for (std::size_t r = 0; r < e.rows.size(); ++r) c[e.pivots[r]] = -e.rows[r][f];
  return c;
}

}  // namespace

Subspace::Subspace(Window ambient, std::vector<WindowVector> basis)
    : ambient_(ambient), basis_(std::move(basis)) {
  for (const auto& v : basis_)
    if (v.window() != ambient_ && !(ambient_.empty() && v.size() == 0))
      throw DimensionMismatch("basis vector outside ambient window");
  std::vector<std::vector<Rational>> rows;
  for (const auto& v : basis_) rows.push_back(v.coords());
  if (rank(rows, static_cast<std::size_t>(ambient_.size())) != basis_.size())
    throw NotIndependent();
}

Subspace Subspace::whole(Window ambient) {
  std::vector<WindowVector> b;
  for (Index i = ambient.lo; i < ambient.hi; ++i) b.push_back(WindowVector::unit(ambient, i));
  return Subspace(ambient, std::move(b));
}

RMatrix Subspace::matrix() const { return RMatrix::from_columns(basis_, ambient_); }

std::vector<Point> Subspace::coordinate_rows() const {
  std::vector<Point> rows;
  for (Index i = ambient_.lo; i < ambient_.hi; ++i) {
    Point p(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) p[k] = basis_[k][i];
    rows.push_back(std::move(p));
  }
  return rows;
}

WindowVector Subspace::combine(const std::vector<Rational>& c) const {
  WindowVector out = WindowVector::zeros(ambient_);
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (c[k] != 0) out = out + basis_[k] * c[k];
  return out;
}

std::optional<std::vector<Rational>> Subspace::coefficients(const WindowVector& v) const {
  if (v.window() != ambient_) return std::nullopt;
  const std::size_t h = basis_.size();
  std::vector<std::vector<Rational>> rows;
  for (Index i = ambient_.lo; i < ambient_.hi; ++i) {
    std::vector<Rational> r(h + 1);
    for (std::size_t k = 0; k < h; ++k) r[k] = basis_[k][i];
    r[h] = v[i];
    rows.push_back(std::move(r));
  }
  Echelon e = rref(std::move(rows), h + 1);
  std::vector<Rational> c(h);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == h) return std::nullopt;
    c[e.pivots[r]] = e.rows[r][h];
  }
  return c;
}

LinMap::LinMap(Subspace domain, Window codomain, std::vector<WindowVector> images)
    : domain_(std::move(domain)), codomain_(codomain), images_(std::move(images)) {
  if (images_.size() != domain_.dim()) throw DimensionMismatch("one image per basis vector");
  for (const auto& w : images_)
    if (w.window() != codomain_ && !(codomain_.empty() && w.size() == 0))
      throw DimensionMismatch("image outside codomain window");
}

LinMap::LinMap(Subspace domain, Subspace codomain_space, std::vector<WindowVector> images)
    : LinMap(std::move(domain), codomain_space.ambient(), std::move(images)) {
  for (const auto& w : images_)
    if (!codomain_space.coefficients(w)) throw DimensionMismatch("image not in codomain subspace");
  codomain_space_ = std::move(codomain_space);
}

RMatrix LinMap::image_matrix() const { return RMatrix::from_columns(images_, codomain_); }

std::vector<Point> LinMap::image_rows() const {
  std::vector<Point> rows;
  for (Index i = codomain_.lo; i < codomain_.hi; ++i) {
    Point p(images_.size());
    for (std::size_t k = 0; k < images_.size(); ++k) p[k] = images_[k][i];
    rows.push_back(std::move(p));
  }
  return rows;
}

WindowVector LinMap::apply(const std::vector<Rational>& c) const {
  WindowVector out = WindowVector::zeros(codomain_);
  for (std::size_t k = 0; k < images_.size(); ++k)
    if (c[k] != 0) out = out + images_[k] * c[k];
  return out;
}

LinMap LinMap::scaled(const Rational& s) const {
  LinMap out = *this;
  for (auto& w : out.images_) w = w * s;
  return out;
}

namespace {

LowerBound lower_bound_impl(const LinMap& t, bool use_vertex, std::size_t cap) {
  const std::size_t h = t.domain().dim();
  if (h == 0) throw std::invalid_argument("lower_bound: zero-dimensional domain");
  if (use_vertex && h > cap) throw DimensionCapExceeded(h, cap);
  std::vector<Point> img = t.image_rows();
  if (rank(img, h) < h) return {Rational(0), kernel_vector(img, h)};
  std::vector<Point> dom = t.domain().coordinate_rows();
  BallMaxRows m = use_vertex ? ball_max_rows_vertex(img, dom, h, cap) : ball_max_rows(img, dom, h);
  return {1 / m.value, m.argmax};
}

}  // namespace

LowerBound lower_bound(const LinMap& t, std::size_t cap) { return lower_bound_impl(t, true, cap); }

LowerBound lower_bound_lp(const LinMap& t) { return lower_bound_impl(t, false, 0); }

Rational op_norm(const LinMap& t) {
  const std::size_t h = t.domain().dim();
  if (h == 0) return 0;
  return ball_max_rows(t.domain().coordinate_rows(), t.image_rows(), h).value;
}

HahnBanach hahn_banach_extend(const Subspace& y, const std::vector<Rational>& phi) {
  const std::size_t h = y.dim();
  if (phi.size() != h) throw DimensionMismatch("one functional value per basis vector");
  HahnBanach out{WindowVector::zeros(y.ambient()), Rational(0)};
  if (h == 0) return out;
  std::vector<std::size_t> origin;
  std::vector<int> sign;
  std::vector<Point> rows = dedupe_rows(y.coordinate_rows(), &origin, &sign);
  std::vector<std::vector<Rational>> eq(h, std::vector<Rational>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < h; ++k) eq[k][i] = rows[i][k];
  L1Solution s = lp_min_l1(eq, phi, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.u[y.ambient().lo + static_cast<Index>(origin[i])] = s.u[i] * sign[i];
  out.norm = s.value;
  return out;
}

Rational dual_norm_vertex(const Subspace& y, const std::vector<Rational>& phi, std::size_t cap) {
  Rational best = 0;
  for (const Point& c : vertex_enumerate(y.coordinate_rows(), y.dim(), cap)) {
    Rational v = 0;
    for (std::size_t k = 0; k < c.size(); ++k) v += phi[k] * c[k];
    if (rabs(v) > best) best = rabs(v);
  }
  return best;
}

}  // namespace qf::geom
