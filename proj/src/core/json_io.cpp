#include "qf/core/json_io.hpp"

namespace qf {

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  throw ParseError("expected rational string, got " + j.dump());
}

Json rationals_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(rational_json(r));
  return out;
}

std::vector<Rational> rationals_from(const Json& j) {
  if (!j.is_array()) throw ParseError("expected array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from(x));
  return out;
}

Json vector_json(const WindowVector& v) {
  return Json{{"lo", v.lo()}, {"coords", rationals_json(v.coords())}};
}

WindowVector vector_from(const Json& j) {
  return WindowVector(j.value("lo", Index{0}), rationals_from(j.at("coords")));
}

namespace {

Json window_json(Window w) { return Json::array({w.lo, w.hi}); }

Window window_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("window must be [lo, hi]");
  return {j[0].get<Index>(), j[1].get<Index>()};
}

}  // namespace

Json matrix_json(const RMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.num_rows(); ++i) {
    Json r = Json::array();
    for (Index j = 0; j < m.num_cols(); ++j) r.push_back(rational_json(m.local(i, j)));
    rows.push_back(std::move(r));
  }
  return Json{{"rows", window_json(m.row_window())},
              {"cols", window_json(m.col_window())},
              {"entries", std::move(rows)}};
}

RMatrix matrix_from(const Json& j) {
  Window rw = window_from(j.at("rows"));
  Window cw = window_from(j.at("cols"));
  std::vector<std::vector<Rational>> e;
  for (const auto& r : j.at("entries")) e.push_back(rationals_from(r));
  return RMatrix(rw, cw, std::move(e));
}

Json matrix_sparse_json(const RMatrix& m) {
  Json trip = Json::array();
  for (Index i = m.row_window().lo; i < m.row_window().hi; ++i)
    for (Index j = m.col_window().lo; j < m.col_window().hi; ++j)
      if (m(i, j) != 0) trip.push_back(Json::array({i, j, rational_json(m(i, j))}));
  return Json{{"rows", window_json(m.row_window())},
              {"cols", window_json(m.col_window())},
              {"triplets", std::move(trip)}};
}

RMatrix matrix_from_sparse(const Json& j) {
  RMatrix m(window_from(j.at("rows")), window_from(j.at("cols")));
  for (const auto& t : j.at("triplets")) {
    Index r = t.at(0).get<Index>(), c = t.at(1).get<Index>();
    if (!m.row_window().contains(r) || !m.col_window().contains(c))
      throw ParseError("triplet outside matrix windows");
    m(r, c) = rational_from(t.at(2));
  }
  return m;
}

}  // namespace qf
