#include "qf/core/matrix.hpp"

#include <string>

namespace qf {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DimensionMismatch(what);
}

}  // namespace

RMatrix::RMatrix(Window rows, Window cols)
    : rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(std::max<Index>(rows.size(), 0) *
                                     std::max<Index>(cols.size(), 0))) {
  require(rows.size() >= 0 && cols.size() >= 0, "negative window");
}

RMatrix::RMatrix(Window rows, Window cols, std::vector<std::vector<Rational>> entries)
    : RMatrix(rows, cols) {
  require(static_cast<Index>(entries.size()) == rows.size(), "row count mismatch");
  for (Index i = 0; i < rows.size(); ++i) {
    require(static_cast<Index>(entries[i].size()) == cols.size(), "column count mismatch");
    for (Index j = 0; j < cols.size(); ++j) local(i, j) = std::move(entries[i][j]);
  }
}

RMatrix RMatrix::identity(Window w) {
  RMatrix m(w, w);
  for (Index i = 0; i < w.size(); ++i) m.local(i, i) = 1;
  return m;
}

RMatrix RMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  Index c = rows.empty() ? 0 : static_cast<Index>(rows[0].size());
  return RMatrix({0, static_cast<Index>(rows.size())}, {0, c}, rows);
}

RMatrix RMatrix::from_columns(const std::vector<WindowVector>& cols, Window rows, Index col_lo) {
  RMatrix m(rows, {col_lo, col_lo + static_cast<Index>(cols.size())});
  for (std::size_t k = 0; k < cols.size(); ++k) {
    require(cols[k].window() == rows || rows.empty(), "column window mismatch");
    for (Index i = rows.lo; i < rows.hi; ++i) m(i, col_lo + static_cast<Index>(k)) = cols[k][i];
  }
  return m;
}

WindowVector RMatrix::row(Index i) const {
  std::vector<Rational> c(cols_.size());
  for (Index j = 0; j < cols_.size(); ++j) c[j] = local(i - rows_.lo, j);
  return WindowVector(cols_.lo, std::move(c));
}

WindowVector RMatrix::column(Index j) const {
  std::vector<Rational> c(rows_.size());
  for (Index i = 0; i < rows_.size(); ++i) c[i] = local(i, j - cols_.lo);
  return WindowVector(rows_.lo, std::move(c));
}

WindowVector RMatrix::apply(const WindowVector& v) const {
  require(v.window() == cols_ || (cols_.empty() && v.size() == 0), "apply: window mismatch");
  WindowVector out = WindowVector::zeros(rows_);
  for (Index i = 0; i < rows_.size(); ++i) {
    Rational s = 0;
    for (Index j = 0; j < cols_.size(); ++j) {
      const Rational& a = local(i, j);
      if (a != 0 && v.coords()[j] != 0) s += a * v.coords()[j];
    }
    out[rows_.lo + i] = s;
  }
  return out;
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
  require(cols_.size() == o.rows_.size() && (cols_ == o.rows_ || cols_.empty()),
          "multiply: window mismatch");
  RMatrix out(rows_, o.cols_);
  Index n = o.cols_.size();
  // Nonzero column lists of the right factor.
  std::vector<std::vector<Index>> nz(o.rows_.size());
  for (Index k = 0; k < o.rows_.size(); ++k)
    for (Index j = 0; j < n; ++j)
      if (o.local(k, j) != 0) nz[k].push_back(j);
  Rational t;
  for (Index i = 0; i < rows_.size(); ++i)
    for (Index k = 0; k < cols_.size(); ++k) {
      const Rational& a = local(i, k);
      if (a == 0) continue;
      for (Index j : nz[k]) {
        t = a * o.local(k, j);
        out.local(i, j) += t;
      }
    }
  return out;
}

RMatrix RMatrix::operator+(const RMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, "add: window mismatch");
  RMatrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += o.data_[k];
  return out;
}

RMatrix RMatrix::operator-(const RMatrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, "sub: window mismatch");
  RMatrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] -= o.data_[k];
  return out;
}

RMatrix RMatrix::scaled(const Rational& s) const {
  RMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

RMatrix RMatrix::transpose() const {
  RMatrix out(cols_, rows_);
  for (Index i = 0; i < rows_.size(); ++i)
    for (Index j = 0; j < cols_.size(); ++j) out.local(j, i) = local(i, j);
  return out;
}

RMatrix RMatrix::submatrix(Window rows, Window cols) const {
  require(rows.lo >= rows_.lo && rows.hi <= rows_.hi && cols.lo >= cols_.lo && cols.hi <= cols_.hi,
          "submatrix out of range");
  RMatrix out(rows, cols);
  for (Index i = rows.lo; i < rows.hi; ++i)
    for (Index j = cols.lo; j < cols.hi; ++j) out(i, j) = (*this)(i, j);
  return out;
}

RMatrix RMatrix::with_windows(Window rows, Window cols) const {
  require(rows.size() == rows_.size() && cols.size() == cols_.size(), "relabel size mismatch");
  RMatrix out = *this;
  out.rows_ = rows;
  out.cols_ = cols;
  return out;
}

bool RMatrix::is_identity() const {
  if (rows_.size() != cols_.size()) return false;
  for (Index i = 0; i < rows_.size(); ++i)
    for (Index j = 0; j < cols_.size(); ++j)
      if (local(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool RMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool RMatrix::operator==(const RMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Rational op_norm_inf(const RMatrix& m) {
  Rational best = 0;
  for (Index i = 0; i < m.num_rows(); ++i) {
    Rational s = 0;
    for (Index j = 0; j < m.num_cols(); ++j) s += rabs(m.local(i, j));
    if (s > best) best = s;
  }
  return best;
}

std::optional<Index> op_norm_row(const RMatrix& m) {
  if (m.num_rows() == 0) return std::nullopt;
  Rational best = -1;
  Index arg = 0;
  for (Index i = 0; i < m.num_rows(); ++i) {
    Rational s = 0;
    for (Index j = 0; j < m.num_cols(); ++j) s += rabs(m.local(i, j));
    if (s > best) {
      best = s;
      arg = i;
    }
  }
  return m.row_window().lo + arg;
}

RMatrix invert(const RMatrix& m) {
  require(m.num_rows() == m.num_cols(), "invert: not square");
  const Index n = m.num_rows();
  // Sparse-aware Gauss-Jordan on [A | I], each row kept as a dense vector.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a[i][j] = m.local(i, j);
    a[i][n + i] = 1;
  }
  std::vector<Index> nzcols;
  Rational f;
  for (Index c = 0; c < n; ++c) {
    Index p = -1;
    for (Index r = c; r < n; ++r)
      if (a[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) throw Singular();
    std::swap(a[p], a[c]);
    Rational inv = 1 / a[c][c];
    nzcols.clear();
    for (Index j = 0; j < 2 * n; ++j)
      if (a[c][j] != 0) {
        a[c][j] *= inv;
        nzcols.push_back(j);
      }
    for (Index r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational factor = a[r][c];
      for (Index j : nzcols) {
        f = factor * a[c][j];
        a[r][j] -= f;
      }
    }
  }
  RMatrix out(m.col_window(), m.row_window());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out.local(i, j) = a[i][n + j];
  return out;
}

BlockLayout::BlockLayout(std::vector<Index> c) : cuts(std::move(c)) {
  for (std::size_t k = 1; k < cuts.size(); ++k)
    if (cuts[k] <= cuts[k - 1]) throw DimensionMismatch("layout cuts must be strictly increasing");
}

RMatrix block_compose(const std::vector<RMatrix>& blocks, const BlockLayout& layout) {
  require(blocks.size() == layout.num_blocks(), "block count does not match layout");
  Window span = layout.span();
  RMatrix out(span, span);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    Window w = layout.block(k);
    require(blocks[k].row_window() == w && blocks[k].col_window() == w,
            "block window does not match layout");
    for (Index i = w.lo; i < w.hi; ++i)
      for (Index j = w.lo; j < w.hi; ++j) out(i, j) = blocks[k](i, j);
  }
  return out;
}

Echelon rref(std::vector<std::vector<Rational>> rows, std::size_t ncols) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  return e;
}

std::size_t rank(const std::vector<std::vector<Rational>>& rows, std::size_t ncols) {
  return rref(rows, ncols).pivots.size();
}

std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j <= n; ++j)
        if (a[c][j] != 0) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

}  // namespace qf
