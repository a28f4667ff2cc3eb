#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "ilab/field.hpp"

namespace ilab {

template <Field F>
using Vector = std::vector<typename F::value_type>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void check_dim(std::size_t got, std::size_t want) {
  if (got != want)
    throw DimensionError(fmt::format("vector of length {} in ambient dimension {}", got, want));
}

template <Field F>
class Subspace;

/// Incremental reduced row-echelon builder.
///
/// Rows are kept fully reduced at all times: each row has a 1 in its pivot
/// column and every other row is zero there. Reducing a vector therefore only
/// touches rows whose pivot column is nonzero in the input, which keeps sparse
/// absorbs cheap. Rows are stored in insertion order so that closure loops can
/// walk them with a cursor while new rows are appended.
template <Field F>
class SubspaceBuilder {
 public:
  using value_type = typename F::value_type;

  SubspaceBuilder(F field, std::size_t ambient)
      : field_(std::move(field)), ambient_(ambient) {}

  explicit SubspaceBuilder(const Subspace<F>& start);

  const F& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  bool full() const noexcept { return rows_.size() == ambient_; }
  const Vector<F>& row(std::size_t i) const { return rows_[i]; }

  /// Residue of v modulo the current span (zero iff v is contained).
  Vector<F> reduce(Vector<F> v) const {
    check_dim(v.size(), ambient_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = pivots_[r];
      if (field_.is_zero(v[c])) continue;
      const value_type f = field_.neg(v[c]);
      field_.axpy(std::span<value_type>(v), f, std::span<const value_type>(rows_[r]));
    }
    return v;
  }

  bool contains(const Vector<F>& v) const {
    const Vector<F> r = reduce(v);
    return std::all_of(r.begin(), r.end(), [&](const value_type& x) { return field_.is_zero(x); });
  }

  /// Adds v to the span. Returns true iff the dimension grew.
  bool absorb(Vector<F> v) {
    if (full()) {
      check_dim(v.size(), ambient_);
      return false;
    }
    v = reduce(std::move(v));
    std::size_t pivot = ambient_;
    for (std::size_t k = 0; k < ambient_; ++k)
      if (!field_.is_zero(v[k])) {
        pivot = k;
        break;
      }
    if (pivot == ambient_) return false;
    const value_type scale = field_.inv(v[pivot]);
    for (auto& x : v)
      if (!field_.is_zero(x)) x = field_.mul(x, scale);
    for (auto& row : rows_) {
      if (field_.is_zero(row[pivot])) continue;
      const value_type f = field_.neg(row[pivot]);
      field_.axpy(std::span<value_type>(row), f, std::span<const value_type>(v));
    }
    pivots_.push_back(pivot);
    rows_.push_back(std::move(v));
    return true;
  }

  Subspace<F> build() const;

 private:
  F field_;
  std::size_t ambient_;
  std::vector<Vector<F>> rows_;
  std::vector<std::size_t> pivots_;
};

/// An immutable subspace of F^n in canonical reduced row-echelon form.
/// Equal subspaces have identical bases, so equality is representation equality.
template <Field F>
class Subspace {
 public:
  using value_type = typename F::value_type;

  Subspace(F field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient) {}

  static Subspace zero(F field, std::size_t ambient) { return Subspace(std::move(field), ambient); }
  static Subspace full(F field, std::size_t ambient) {
    SubspaceBuilder<F> b(field, ambient);
    for (std::size_t k = 0; k < ambient; ++k) {
      Vector<F> e(ambient, field.zero());
      e[k] = field.one();
      b.absorb(std::move(e));
    }
    return b.build();
  }
  static Subspace span(F field, std::size_t ambient, std::span<const Vector<F>> vectors) {
    SubspaceBuilder<F> b(std::move(field), ambient);
    for (const auto& v : vectors) b.absorb(v);
    return b.build();
  }

  const F& field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool is_zero() const noexcept { return basis_.empty(); }
  bool is_full() const noexcept { return basis_.size() == ambient_; }
  const std::vector<Vector<F>>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  Vector<F> reduce(Vector<F> v) const {
    check_dim(v.size(), ambient_);
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      const std::size_t c = pivots_[r];
      if (field_.is_zero(v[c])) continue;
      const value_type f = field_.neg(v[c]);
      field_.axpy(std::span<value_type>(v), f, std::span<const value_type>(basis_[r]));
    }
    return v;
  }

  bool contains(const Vector<F>& v) const {
    const Vector<F> r = reduce(v);
    return std::all_of(r.begin(), r.end(), [&](const value_type& x) { return field_.is_zero(x); });
  }

  /// this ⊆ other
  bool is_subspace_of(const Subspace& other) const {
    check_dim(other.ambient_, ambient_);
    return std::all_of(basis_.begin(), basis_.end(),
                       [&](const Vector<F>& v) { return other.contains(v); });
  }

  Subspace sum(const Subspace& other) const {
    check_dim(other.ambient_, ambient_);
    SubspaceBuilder<F> b(*this);
    for (const auto& v : other.basis_) b.absorb(v);
    return b.build();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
  }

 private:
  friend class SubspaceBuilder<F>;

  F field_;
  std::size_t ambient_;
  std::vector<Vector<F>> basis_;
  std::vector<std::size_t> pivots_;
};

template <Field F>
SubspaceBuilder<F>::SubspaceBuilder(const Subspace<F>& start)
    : field_(start.field()), ambient_(start.ambient_dim()), rows_(start.basis()),
      pivots_(start.pivots()) {}

template <Field F>
Subspace<F> SubspaceBuilder<F>::build() const {
  Subspace<F> s(field_, ambient_);
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  s.basis_.reserve(order.size());
  for (std::size_t i : order) {
    s.basis_.push_back(rows_[i]);
    s.pivots_.push_back(pivots_[i]);
  }
  return s;
}

template <Field F>
Subspace<F> span(const F& field, std::size_t ambient, std::span<const Vector<F>> vectors) {
  return Subspace<F>::span(field, ambient, vectors);
}

template <Field F>
Subspace<F> subspace_sum(const Subspace<F>& a, const Subspace<F>& b) {
  return a.sum(b);
}

template <Field F>
bool subspace_equal(const Subspace<F>& a, const Subspace<F>& b) {
  check_dim(a.ambient_dim(), b.ambient_dim());
  return a == b;
}

/// Kernel {x : sum_j x_j * columns[j] = 0} of the matrix whose columns are given.
template <Field F>
Subspace<F> column_kernel(const F& field, std::size_t rows, std::span<const Vector<F>> columns) {
  using value_type = typename F::value_type;
  const std::size_t ncols = columns.size();
  // Row-reduce the transpose-free matrix M (rows x ncols).
  std::vector<Vector<F>> m(rows, Vector<F>(ncols, field.zero()));
  for (std::size_t j = 0; j < ncols; ++j) {
    check_dim(columns[j].size(), rows);
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = columns[j][i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && field.is_zero(m[sel][c])) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    const value_type s = field.inv(m[r][c]);
    for (auto& x : m[r]) x = field.mul(x, s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || field.is_zero(m[i][c])) continue;
      field.axpy(std::span<value_type>(m[i]), field.neg(m[i][c]), std::span<const value_type>(m[r]));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<char> is_pivot(ncols, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  std::vector<Vector<F>> kernel;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vector<F> v(ncols, field.zero());
    v[free] = field.one();
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = field.neg(m[i][free]);
    kernel.push_back(std::move(v));
  }
  return Subspace<F>::span(field, ncols, kernel);
}

template <Field F>
struct SquareSolve {
  std::optional<Vector<F>> solution;
  Vector<F> kernel_witness;  // nonzero x with M x = 0 when M is singular
};

/// Solves M x = b for square M given by its columns.
template <Field F>
SquareSolve<F> solve_square(const F& field, std::span<const Vector<F>> columns, const Vector<F>& b) {
  using value_type = typename F::value_type;
  const std::size_t n = columns.size();
  check_dim(b.size(), n);
  std::vector<Vector<F>> m(n, Vector<F>(n + 1, field.zero()));
  for (std::size_t j = 0; j < n; ++j) {
    check_dim(columns[j].size(), n);
    for (std::size_t i = 0; i < n; ++i) m[i][j] = columns[j][i];
  }
  for (std::size_t i = 0; i < n; ++i) m[i][n] = b[i];
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && field.is_zero(m[sel][c])) ++sel;
    if (sel == n) {
      SquareSolve<F> out;
      const Subspace<F> ker = column_kernel(field, n, columns);
      out.kernel_witness = ker.basis().front();
      return out;
    }
    std::swap(m[sel], m[c]);
    const value_type s = field.inv(m[c][c]);
    for (auto& x : m[c]) x = field.mul(x, s);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || field.is_zero(m[i][c])) continue;
      field.axpy(std::span<value_type>(m[i]), field.neg(m[i][c]), std::span<const value_type>(m[c]));
    }
  }
  SquareSolve<F> out;
  Vector<F> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  out.solution = std::move(x);
  return out;
}

}  // namespace ilab
