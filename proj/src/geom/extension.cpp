#include "qf/geom/extension.hpp"

#include <algorithm>
#include <set>

namespace qf::geom {

void ExtensionConfig::validate() const {
  if (rho <= 1) throw std::invalid_argument("rho must exceed 1");
  if (c1 <= 0) throw std::invalid_argument("c1 must be positive");
  if (c2 < rho) throw std::invalid_argument("c2 must be at least rho");
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  if (complement_budget_sq < 1) throw std::invalid_argument("complement budget must be >= 1");
}

NormBudget::NormBudget(const std::string& what, Rational m, Rational b)
    : GeomError(what + ": measured " + to_string(m) + " exceeds " + to_string(b)),
      measured(std::move(m)), bound(std::move(b)) {}

LinMap coordinate_witness(const Subspace& y) {
  Window w{0, static_cast<Index>(y.dim())};
  std::vector<WindowVector> img;
  for (Index k = 0; k < w.hi; ++k) img.push_back(WindowVector::unit(w, k));
  return LinMap(y, w, std::move(img));
}

namespace {

RMatrix witness_matrix(const Subspace& y, const LinMap& s) {
  const Index h = static_cast<Index>(y.dim());
  if (s.domain().dim() != y.dim() || s.codomain().size() != h)
    throw DimensionMismatch("witness must map Y onto l_inf^h");
  return s.image_matrix().with_windows({0, h}, {0, h});
}

RMatrix representer_matrix(const std::vector<WindowVector>& reps, Window ambient) {
  RMatrix u({0, static_cast<Index>(reps.size())}, ambient);
  for (std::size_t j = 0; j < reps.size(); ++j)
    for (Index i = ambient.lo; i < ambient.hi; ++i) u(static_cast<Index>(j), i) = reps[j][i];
  return u;
}

Rational distortion(const LinMap& s) {
  LowerBound lb = lower_bound_lp(s);
  if (lb.value == 0) throw NotInvertible("witness map is not injective");
  return op_norm(s) / lb.value;
}

// Graph basis of the subspace spanned by `rows` (local, over `ambient`) with
// the given free coordinates.
GraphBasis graph_over(const std::vector<std::vector<Rational>>& rows, Window ambient,
                      const std::vector<Index>& free) {
  const std::size_t d = free.size();
  std::vector<std::vector<Rational>> bj(d, std::vector<Rational>(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t t = 0; t < d; ++t) bj[r][t] = rows[r][free[t] - ambient.lo];
  RMatrix inv = invert(RMatrix::from_rows(bj));
  GraphBasis g{ambient, free, RMatrix(ambient, {0, static_cast<Index>(d)})};
  for (std::size_t t = 0; t < d; ++t)
    for (std::size_t r = 0; r < d; ++r) {
      const Rational& c = inv.local(t, r);
      if (c == 0) continue;
      for (Index i = 0; i < ambient.size(); ++i)
        if (rows[r][i] != 0) g.matrix.local(i, t) += c * rows[r][i];
    }
  return g;
}

GraphBasis graph_first_pivots(const Subspace& z) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& v : z.basis()) rows.push_back(v.coords());
  Echelon e = rref(rows, static_cast<std::size_t>(z.ambient().size()));
  GraphBasis g{z.ambient(), {}, RMatrix(z.ambient(), {0, static_cast<Index>(z.dim())})};
  for (std::size_t t = 0; t < e.pivots.size(); ++t) {
    g.free.push_back(z.ambient().lo + static_cast<Index>(e.pivots[t]));
    for (Index i = 0; i < z.ambient().size(); ++i) g.matrix.local(i, t) = e.rows[t][i];
  }
  return g;
}

// Complete pivoting: repeatedly take the largest remaining entry.
std::vector<Index> max_pivot_free(const GraphBasis& g) {
  const Index n = g.ambient.size();
  const Index d = static_cast<Index>(g.free.size());
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(n));
  for (Index t = 0; t < d; ++t)
    for (Index i = 0; i < n; ++i) a[t][i] = g.matrix.local(i, t);
  std::vector<bool> row_used(d, false), col_used(n, false);
  std::vector<Index> free;
  for (Index step = 0; step < d; ++step) {
    Index br = -1, bc = -1;
    Rational best = 0;
    for (Index r = 0; r < d; ++r) {
      if (row_used[r]) continue;
      for (Index c = 0; c < n; ++c)
        if (!col_used[c] && rabs(a[r][c]) > best) {
          best = rabs(a[r][c]);
          br = r;
          bc = c;
        }
    }
    row_used[br] = col_used[bc] = true;
    free.push_back(g.ambient.lo + bc);
    for (Index r = 0; r < d; ++r) {
      if (row_used[r] || a[r][bc] == 0) continue;
      Rational f = a[r][bc] / a[br][bc];
      for (Index c = 0; c < n; ++c)
        if (a[br][c] != 0) a[r][c] -= f * a[br][c];
    }
  }
  std::sort(free.begin(), free.end());
  return free;
}

std::vector<std::vector<Rational>> graph_rows(const GraphBasis& g) {
  const Index d = static_cast<Index>(g.free.size());
  std::vector<std::vector<Rational>> rows(d, std::vector<Rational>(g.ambient.size()));
  for (Index t = 0; t < d; ++t)
    for (Index i = 0; i < g.ambient.size(); ++i) rows[t][i] = g.matrix.local(i, t);
  return rows;
}

// Shared free coordinates fixed, the rest matched in increasing order.
std::vector<std::size_t> sigma_shared(const std::vector<Index>& j1, const std::vector<Index>& j2) {
  std::vector<std::size_t> sigma(j1.size());
  std::set<Index> s2(j2.begin(), j2.end()), s1(j1.begin(), j1.end());
  std::vector<std::size_t> rest1, rest2;
  for (std::size_t t = 0; t < j1.size(); ++t)
    if (!s2.count(j1[t])) rest1.push_back(t);
  for (std::size_t t = 0; t < j2.size(); ++t)
    if (!s1.count(j2[t])) rest2.push_back(t);
  for (std::size_t t = 0; t < j1.size(); ++t)
    if (s2.count(j1[t]))
      sigma[t] = static_cast<std::size_t>(std::lower_bound(j2.begin(), j2.end(), j1[t]) - j2.begin());
  for (std::size_t k = 0; k < rest1.size(); ++k) sigma[rest1[k]] = rest2[k];
  return sigma;
}

std::vector<std::size_t> sigma_ordered(std::size_t d) {
  std::vector<std::size_t> s(d);
  for (std::size_t t = 0; t < d; ++t) s[t] = t;
  return s;
}

RMatrix permuted_columns(const GraphBasis& target, const std::vector<std::size_t>& sigma) {
  const Index d = static_cast<Index>(sigma.size());
  RMatrix m(target.ambient, {0, d});
  for (Index t = 0; t < d; ++t)
    for (Index i = 0; i < target.ambient.size(); ++i) m.local(i, t) = target.matrix.local(i, sigma[t]);
  return m;
}

std::vector<std::size_t> inverse_perm(const std::vector<std::size_t>& s) {
  std::vector<std::size_t> inv(s.size());
  for (std::size_t t = 0; t < s.size(); ++t) inv[s[t]] = t;
  return inv;
}

ComplementMatch complement_from_graphs(const GraphBasis& g1, const GraphBasis& g2,
                                       const Rational& budget_sq) {
  if (g1.free.size() != g2.free.size()) throw DimensionMismatch("complements differ in dimension");
  const std::size_t d = g1.free.size();
  struct Candidate {
    GraphBasis a, b;
    std::vector<std::size_t> sigma;
  };
  auto attempt = [&](int stage, const Candidate& c) -> std::optional<ComplementMatch> {
    Rational na = d ? op_norm_inf(permuted_columns(c.b, c.sigma)) : Rational(1);
    Rational nb = d ? op_norm_inf(permuted_columns(c.a, inverse_perm(c.sigma))) : Rational(1);
    if (na * nb > budget_sq) return std::nullopt;
    ComplementMatch m;
    m.z1 = c.a;
    m.z2 = c.b;
    m.sigma = c.sigma;
    m.stage = stage;
    m.norm_bound = na;
    m.inv_norm_bound = nb;
    return m;
  };
  if (auto m = attempt(1, {g1, g2, sigma_shared(g1.free, g2.free)})) return *m;
  if (auto m = attempt(2, {g1, g2, sigma_ordered(d)})) return *m;
  GraphBasis h1 = graph_over(graph_rows(g1), g1.ambient, max_pivot_free(g1));
  GraphBasis h2 = graph_over(graph_rows(g2), g2.ambient, max_pivot_free(g2));
  if (auto m = attempt(3, {h1, h2, sigma_shared(h1.free, h2.free)})) return *m;
  throw ComplementNotFound("no complement matching within budget " + to_string(budget_sq));
}

// ker U in graph form over the non-pivot coordinates of rref(U).
GraphBasis kernel_graph(const RMatrix& u) {
  Window amb = u.col_window();
  const Index n = amb.size();
  std::vector<std::vector<Rational>> rows;
  for (Index r = 0; r < u.num_rows(); ++r) {
    std::vector<Rational> row(n);
    for (Index i = 0; i < n; ++i) row[i] = u.local(r, i);
    rows.push_back(std::move(row));
  }
  Echelon e = rref(std::move(rows), static_cast<std::size_t>(n));
  std::vector<bool> pivot(n, false);
  for (auto p : e.pivots) pivot[p] = true;
  GraphBasis g{amb, {}, RMatrix()};
  for (Index i = 0; i < n; ++i)
    if (!pivot[i]) g.free.push_back(amb.lo + i);
  g.matrix = RMatrix(amb, {0, static_cast<Index>(g.free.size())});
  for (std::size_t t = 0; t < g.free.size(); ++t) {
    Index j = g.free[t] - amb.lo;
    g.matrix.local(j, t) = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r)
      if (e.rows[r][j] != 0) g.matrix.local(e.pivots[r], t) = -e.rows[r][j];
  }
  return g;
}

// Rows `free` of (I - P), as a |free| x ambient matrix.
RMatrix complement_rows(const RMatrix& p, const std::vector<Index>& free) {
  Window amb = p.row_window();
  RMatrix e({0, static_cast<Index>(free.size())}, amb);
  for (std::size_t t = 0; t < free.size(); ++t)
    for (Index i = amb.lo; i < amb.hi; ++i) {
      Rational v = (i == free[t] ? 1 : 0);
      v -= p(free[t], i);
      e(static_cast<Index>(t), i) = v;
    }
  return e;
}

Rational isqrt_floor(const Rational& x) {
  Integer q = x.get_num() / x.get_den();
  Integer r;
  mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
  return Rational(r);
}

}  // namespace

Projection build_projection(const Subspace& y, const LinMap& s) {
  const Index h = static_cast<Index>(y.dim());
  RMatrix smat = witness_matrix(y, s);
  RMatrix sinv;
  try {
    sinv = invert(smat);
  } catch (const Singular&) {
    throw NotInvertible("witness map S is not invertible");
  }
  Projection p;
  Rational max_l1 = 0;
  for (Index j = 0; j < h; ++j) {
    std::vector<Rational> phi(h);
    for (Index k = 0; k < h; ++k) phi[k] = smat.local(j, k);
    HahnBanach hb = hahn_banach_extend(y, phi);
    if (hb.norm > max_l1) max_l1 = hb.norm;
    p.representers.push_back(std::move(hb.u));
  }
  RMatrix vs = y.matrix().with_windows(y.ambient(), {0, h}) * sinv;
  p.matrix = vs * representer_matrix(p.representers, y.ambient());
  p.norm = op_norm_inf(p.matrix);
  p.norm_bound = op_norm_inf(vs) * max_l1;
  return p;
}

ComplementMatch complement_iso(const Subspace& z1, const Subspace& z2, const Rational& budget_sq) {
  if (z1.dim() != z2.dim()) throw DimensionMismatch("complements differ in dimension");
  ComplementMatch m =
      complement_from_graphs(graph_first_pivots(z1), graph_first_pivots(z2), budget_sq);
  std::vector<WindowVector> dom, img;
  for (std::size_t t = 0; t < m.sigma.size(); ++t) {
    dom.push_back(m.z1.matrix.column(static_cast<Index>(t)));
    img.push_back(m.z2.matrix.column(static_cast<Index>(m.sigma[t])));
  }
  m.q = LinMap(Subspace(m.z1.ambient, std::move(dom)), m.z2.ambient, std::move(img));
  return m;
}

Rescale balanced_rescale(const Rational& a, const Rational& b, const Rational& delta) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("balanced_rescale: norms must be positive");
  Rational ratio = b / a;
  Rational bound = (1 + delta) * (1 + delta) * a * b;
  auto result = [&](const Rational& s) { return Rescale{s, s * a, b / s}; };
  if (mpz_perfect_square_p(ratio.get_num().get_mpz_t()) &&
      mpz_perfect_square_p(ratio.get_den().get_mpz_t())) {
    Integer p, q;
    mpz_sqrt(p.get_mpz_t(), ratio.get_num().get_mpz_t());
    mpz_sqrt(q.get_mpz_t(), ratio.get_den().get_mpz_t());
    return result(Rational(p, q));
  }
  for (Integer k = 1;; k *= 2) {
    Rational kk(k);
    Rational s = isqrt_floor(ratio * kk * kk) / kk;
    if (s == 0) continue;
    Rescale r = result(s);
    Rational m = std::max(r.norm, r.inv_norm);
    if (m * m <= bound) return r;
  }
}

LinMap balanced_rescale(const LinMap& q, const Rational& delta, Rescale* info) {
  LowerBound lb = lower_bound_lp(q);
  if (lb.value == 0) throw NotInvertible("map is not injective");
  Rescale r = balanced_rescale(op_norm(q), 1 / lb.value, delta);
  if (info) *info = r;
  return q.scaled(r.s);
}

Json Extension::report() const {
  return Json{{"norm", to_string(norm)},
              {"inv_norm", to_string(inv_norm)},
              {"t_norm", to_string(t_norm)},
              {"t_inv_norm", to_string(t_inv_norm)},
              {"s1_distortion", to_string(s1_distortion)},
              {"s2_distortion", to_string(s2_distortion)},
              {"p1_norm", to_string(p1_norm)},
              {"p2_norm", to_string(p2_norm)},
              {"complement_stage", complement_stage},
              {"q_norm_bound", to_string(q_norm_bound)},
              {"q_inv_norm_bound", to_string(q_inv_norm_bound)},
              {"scale", to_string(scale)}};
}

Extension extend_isomorphism(const LinMap& t, const std::optional<LinMap>& s1,
                             const std::optional<LinMap>& s2, const ExtensionConfig& config) {
  config.validate();
  const Subspace& y1 = t.domain();
  const Window amb = y1.ambient();
  if (t.codomain() != amb) throw PreconditionFailed("T must map into the same l_inf^n");
  const Index n = amb.size();
  const Index h = static_cast<Index>(y1.dim());
  if (h == 0) throw PreconditionFailed("Y1 is zero-dimensional");
  if (Rational(h * h) > config.c1 * config.c1 * n)
    throw PreconditionFailed("dimension condition h <= c1 sqrt(n) fails");
  Subspace y2;
  try {
    y2 = Subspace(amb, t.images());
  } catch (const NotIndependent&) {
    throw PreconditionFailed("T is not injective");
  }

  Extension ext;
  LowerBound lb = lower_bound_lp(t);
  ext.t_norm = op_norm(t);
  ext.t_inv_norm = 1 / lb.value;
  if (ext.t_norm >= config.rho) throw NormBudget("||T||", ext.t_norm, config.rho);
  if (ext.t_inv_norm >= config.rho) throw NormBudget("||T^-1||", ext.t_inv_norm, config.rho);

  LinMap w1 = s1 ? *s1 : coordinate_witness(y1);
  LinMap w2 = s2 ? *s2 : coordinate_witness(y2);
  ext.s1_distortion = distortion(w1);
  ext.s2_distortion = distortion(w2);
  if (ext.s1_distortion >= config.rho) throw NormBudget("distortion of S1", ext.s1_distortion, config.rho);
  if (ext.s2_distortion >= config.rho) throw NormBudget("distortion of S2", ext.s2_distortion, config.rho);

  Projection p1 = build_projection(y1, w1);
  Projection p2 = build_projection(y2, w2);
  ext.p1_norm = p1.norm;
  ext.p2_norm = p2.norm;

  Window hw{0, h};
  RMatrix v1 = y1.matrix().with_windows(amb, hw);
  RMatrix v2 = y2.matrix().with_windows(amb, hw);
  RMatrix s1inv = invert(witness_matrix(y1, w1));
  RMatrix s2inv = invert(witness_matrix(y2, w2));
  RMatrix u1 = representer_matrix(p1.representers, amb);
  RMatrix u2 = representer_matrix(p2.representers, amb);

  ext.w = v2 * s1inv * u1;
  ext.w_inv = v1 * s2inv * u2;
  ext.scale = 1;
  ext.q_norm_bound = 1;
  ext.q_inv_norm_bound = 1;
  if (h < n) {
    ComplementMatch m =
        complement_from_graphs(kernel_graph(u1), kernel_graph(u2), config.complement_budget_sq);
    Rescale r = balanced_rescale(m.norm_bound, m.inv_norm_bound, config.delta);
    ext.complement_stage = m.stage;
    ext.q_norm_bound = m.norm_bound;
    ext.q_inv_norm_bound = m.inv_norm_bound;
    ext.scale = r.s;
    RMatrix mq = permuted_columns(m.z2, m.sigma);
    RMatrix mq_inv = permuted_columns(m.z1, inverse_perm(m.sigma));
    ext.w = ext.w + (mq * complement_rows(p1.matrix, m.z1.free)).scaled(r.s);
    ext.w_inv = ext.w_inv + (mq_inv * complement_rows(p2.matrix, m.z2.free)).scaled(1 / r.s);
  }

  for (Index k = 0; k < h; ++k)
    if (ext.w.apply(y1.basis()[k]) != t.images()[k])
      throw std::logic_error("extension does not agree with T on the basis");
  if (!(ext.w * ext.w_inv).is_identity() || !(ext.w_inv * ext.w).is_identity())
    throw std::logic_error("extension inverse formula failed");
  ext.norm = op_norm_inf(ext.w);
  ext.inv_norm = op_norm_inf(ext.w_inv);
  if (ext.norm > config.c2) throw NormBudget("||W||", ext.norm, config.c2);
  if (ext.inv_norm > config.c2) throw NormBudget("||W^-1||", ext.inv_norm, config.c2);
  return ext;
}

ExtensionCheck verify_extension(const LinMap& t, const RMatrix& w, const Rational& c2) {
  ExtensionCheck c;
  c.agrees = true;
  for (std::size_t k = 0; k < t.domain().dim(); ++k)
    if (w.apply(t.domain().basis()[k]) != t.images()[k]) c.agrees = false;
  try {
    RMatrix inv = invert(w);
    c.inverse_ok = (w * inv).is_identity();
    c.norm = op_norm_inf(w);
    c.inv_norm = op_norm_inf(inv);
    c.norms_ok = c.norm <= c2 && c.inv_norm <= c2;
  } catch (const Singular&) {
    c.inverse_ok = false;
  }
  return c;
}

Json subspace_json(const Subspace& y) {
  Json basis = Json::array();
  for (const auto& v : y.basis()) basis.push_back(rationals_json(v.coords()));
  return Json{{"ambient", Json::array({y.ambient().lo, y.ambient().hi})}, {"basis", basis}};
}

Subspace subspace_from(const Json& j) {
  Window amb{j.at("ambient").at(0).get<Index>(), j.at("ambient").at(1).get<Index>()};
  std::vector<WindowVector> basis;
  for (const auto& v : j.at("basis")) basis.emplace_back(amb.lo, rationals_from(v));
  return Subspace(amb, std::move(basis));
}

Json linmap_json(const LinMap& t) {
  Json img = Json::array();
  for (const auto& v : t.images()) img.push_back(rationals_json(v.coords()));
  return Json{{"domain", subspace_json(t.domain())},
              {"codomain", Json::array({t.codomain().lo, t.codomain().hi})},
              {"images", img}};
}

LinMap linmap_from(const Json& j) {
  Subspace dom = subspace_from(j.at("domain"));
  Window cod{j.at("codomain").at(0).get<Index>(), j.at("codomain").at(1).get<Index>()};
  std::vector<WindowVector> img;
  for (const auto& v : j.at("images")) img.emplace_back(cod.lo, rationals_from(v));
  return LinMap(std::move(dom), cod, std::move(img));
}

}  // namespace qf::geom
