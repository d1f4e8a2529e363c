#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qf/core/rational.hpp"
#include "qf/core/vector.hpp"

namespace qf {

class Singular : public std::runtime_error {
 public:
  Singular() : std::runtime_error("matrix is singular") {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense rational matrix with explicit row and column windows.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(Window rows, Window cols);
  RMatrix(Window rows, Window cols, std::vector<std::vector<Rational>> entries);
  static RMatrix identity(Window w);
  // Local-index constructor: rows [0, r), cols [0, c).
  static RMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  // Columns are the given vectors; rows window is their common window.
  static RMatrix from_columns(const std::vector<WindowVector>& cols, Window rows, Index col_lo = 0);

  Window row_window() const { return rows_; }
  Window col_window() const { return cols_; }
  Index num_rows() const { return rows_.size(); }
  Index num_cols() const { return cols_.size(); }

  // Absolute indexing.
  const Rational& operator()(Index i, Index j) const { return data_[at(i, j)]; }
  Rational& operator()(Index i, Index j) { return data_[at(i, j)]; }
  // Local indexing (0-based).
  const Rational& local(Index i, Index j) const { return data_[i * cols_.size() + j]; }
  Rational& local(Index i, Index j) { return data_[i * cols_.size() + j]; }

  WindowVector row(Index i) const;
  WindowVector column(Index j) const;

  WindowVector apply(const WindowVector& v) const;
  RMatrix operator*(const RMatrix& o) const;  // skips zero entries
  RMatrix operator+(const RMatrix& o) const;
  RMatrix operator-(const RMatrix& o) const;
  RMatrix scaled(const Rational& s) const;
  RMatrix transpose() const;
  RMatrix submatrix(Window rows, Window cols) const;
  RMatrix with_windows(Window rows, Window cols) const;  // same entries, relabelled

  bool is_identity() const;
  bool is_zero() const;
  bool operator==(const RMatrix& o) const;

 private:
  std::size_t at(Index i, Index j) const {
    return static_cast<std::size_t>((i - rows_.lo) * cols_.size() + (j - cols_.lo));
  }
  Window rows_;
  Window cols_;
  std::vector<Rational> data_;
};

// Max over rows of the row l1-norm; 0 for an empty matrix.
Rational op_norm_inf(const RMatrix& m);

// Row index attaining op_norm_inf, or nullopt if empty.
std::optional<Index> op_norm_row(const RMatrix& m);

// Exact inverse by Gauss-Jordan elimination; windows are swapped.
RMatrix invert(const RMatrix& m);

struct BlockLayout {
  std::vector<Index> cuts;  // n_0 < n_1 < ... < n_K

  BlockLayout() = default;
  explicit BlockLayout(std::vector<Index> c);
  std::size_t num_blocks() const { return cuts.empty() ? 0 : cuts.size() - 1; }
  Window block(std::size_t k) const { return {cuts[k], cuts[k + 1]}; }
  Window span() const { return cuts.empty() ? Window{} : Window{cuts.front(), cuts.back()}; }
};

RMatrix block_compose(const std::vector<RMatrix>& blocks, const BlockLayout& layout);

// Row-echelon helpers on local-index row lists.
struct Echelon {
  std::vector<std::vector<Rational>> rows;  // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;          // pivot column of each row
};
Echelon rref(std::vector<std::vector<Rational>> rows, std::size_t ncols);
std::size_t rank(const std::vector<std::vector<Rational>>& rows, std::size_t ncols);

// Solves A x = b for square invertible A given by rows; nullopt if singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b);

}  // namespace qf
