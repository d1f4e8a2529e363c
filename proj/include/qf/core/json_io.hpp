#pragma once

#include <json.hpp>

#include "qf/core/matrix.hpp"
#include "qf/core/rational.hpp"
#include "qf/core/vector.hpp"

namespace qf {

using Json = nlohmann::json;

Json rational_json(const Rational& r);
Rational rational_from(const Json& j);  // accepts "p/q" strings and integers

Json rationals_json(const std::vector<Rational>& v);
std::vector<Rational> rationals_from(const Json& j);

// {"lo": lo, "coords": [...]}
Json vector_json(const WindowVector& v);
WindowVector vector_from(const Json& j);

// {"rows": [lo, hi], "cols": [lo, hi], "entries": [[...], ...]}
Json matrix_json(const RMatrix& m);
RMatrix matrix_from(const Json& j);

// {"rows": [lo, hi], "cols": [lo, hi], "triplets": [[i, j, "p/q"], ...]} (nonzeros only)
Json matrix_sparse_json(const RMatrix& m);
RMatrix matrix_from_sparse(const Json& j);

}  // namespace qf
