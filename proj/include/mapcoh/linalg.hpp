/**
 * @file linalg.hpp
 * @brief Exact linear algebra over a field policy.
 *
 * Vectors are sparse (`std::map` from coordinate to nonzero scalar) and
 * linear maps are stored column-wise as images of basis vectors.  Rank and
 * kernel computations run a dense Gauss-Jordan elimination for narrow
 * matrices and a sparse Gauss-Jordan with Markowitz-style pivot selection
 * for wide ones.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mapcoh/errors.hpp"
#include "mapcoh/field.hpp"

namespace mapcoh {

template <class F>
using SparseVec = std::map<std::size_t, typename F::value_type>;

/// y += a * x, dropping entries that cancel.
template <class F>
void add_scaled(const F& field, SparseVec<F>& y, const typename F::value_type& a, const SparseVec<F>& x) {
  if (field.is_zero(a)) return;
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    if (it == y.end()) {
      auto prod = field.mul(a, v);
      if (!field.is_zero(prod)) y.emplace(k, std::move(prod));
    } else {
      field.axpyin(it->second, a, v);
      if (field.is_zero(it->second)) y.erase(it);
    }
  }
}

/// Adds a single term to a sparse vector.
template <class F>
void add_term(const F& field, SparseVec<F>& y, std::size_t k, const typename F::value_type& a) {
  if (field.is_zero(a)) return;
  auto it = y.find(k);
  if (it == y.end()) {
    y.emplace(k, a);
  } else {
    it->second = field.add(it->second, a);
    if (field.is_zero(it->second)) y.erase(it);
  }
}

template <class F>
SparseVec<F> scaled(const F& field, const SparseVec<F>& x, const typename F::value_type& a) {
  SparseVec<F> out;
  add_scaled(field, out, a, x);
  return out;
}

template <class F>
bool vec_equal(const F& field, const SparseVec<F>& a, const SparseVec<F>& b) {
  if (a.size() != b.size()) return false;
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
    if (ia->first != ib->first || !field.equal(ia->second, ib->second)) return false;
  return true;
}

/// A linear map between finite-dimensional spaces with chosen bases.
template <class F>
struct LinearMap {
  using T = typename F::value_type;

  F field;
  std::size_t domain_dim = 0;
  std::size_t codomain_dim = 0;
  std::vector<SparseVec<F>> columns;

  LinearMap(F f, std::size_t dom, std::size_t cod) : field(std::move(f)), domain_dim(dom), codomain_dim(cod), columns(dom) {}

  static LinearMap identity(F f, std::size_t n) {
    LinearMap m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns[i].emplace(i, f.one());
    return m;
  }

  T entry(std::size_t row, std::size_t col) const {
    auto it = columns[col].find(row);
    return it == columns[col].end() ? field.zero() : it->second;
  }

  void set(std::size_t row, std::size_t col, const T& value) {
    if (field.is_zero(value))
      columns[col].erase(row);
    else
      columns[col][row] = value;
  }

  SparseVec<F> apply(const SparseVec<F>& v) const {
    SparseVec<F> out;
    for (const auto& [k, a] : v) add_scaled(field, out, a, columns.at(k));
    return out;
  }

  /// this ∘ first
  LinearMap after(const LinearMap& first) const {
    if (first.codomain_dim != domain_dim) throw InvalidInput("composition dimension mismatch");
    LinearMap out(field, first.domain_dim, codomain_dim);
    for (std::size_t j = 0; j < first.domain_dim; ++j) out.columns[j] = apply(first.columns[j]);
    return out;
  }

  LinearMap plus(const LinearMap& other) const {
    if (other.domain_dim != domain_dim || other.codomain_dim != codomain_dim)
      throw InvalidInput("sum dimension mismatch");
    LinearMap out = *this;
    for (std::size_t j = 0; j < domain_dim; ++j) add_scaled(field, out.columns[j], field.one(), other.columns[j]);
    return out;
  }

  LinearMap scaled_by(const T& a) const {
    LinearMap out(field, domain_dim, codomain_dim);
    for (std::size_t j = 0; j < domain_dim; ++j) out.columns[j] = scaled(field, columns[j], a);
    return out;
  }

  bool is_zero() const {
    return std::all_of(columns.begin(), columns.end(), [](const auto& c) { return c.empty(); });
  }

  bool equals(const LinearMap& other) const {
    if (other.domain_dim != domain_dim || other.codomain_dim != codomain_dim) return false;
    for (std::size_t j = 0; j < domain_dim; ++j)
      if (!vec_equal(field, columns[j], other.columns[j])) return false;
    return true;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
  }
};

/// Rank, kernel basis (domain coordinates) and image basis (codomain coordinates).
template <class F>
struct RankDecomposition {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  std::vector<SparseVec<F>> kernel;
  std::vector<SparseVec<F>> image;
};

/// Matrices with at least this many columns go through the sparse path.
inline constexpr std::size_t kDenseColumnLimit = 2000;

namespace detail {

/// Kernel vectors of a fully reduced system: pivot_row[c] gives the reduced row for pivot column c.
template <class F>
std::vector<SparseVec<F>> kernel_from_reduced(const F& field, std::size_t ncols,
                                              const std::map<std::size_t, SparseVec<F>>& pivot_rows) {
  // column -> list of (pivot column, coefficient) for free columns
  std::vector<SparseVec<F>> kernel;
  std::map<std::size_t, SparseVec<F>> free_entries;
  for (const auto& [pc, row] : pivot_rows)
    for (const auto& [c, v] : row)
      if (c != pc) free_entries[c].emplace(pc, v);
  for (std::size_t f = 0; f < ncols; ++f) {
    if (pivot_rows.count(f)) continue;
    SparseVec<F> v;
    v.emplace(f, field.one());
    auto it = free_entries.find(f);
    if (it != free_entries.end())
      for (const auto& [pc, coef] : it->second) v.emplace(pc, field.neg(coef));
    kernel.push_back(std::move(v));
  }
  return kernel;
}

template <class F>
RankDecomposition<F> dense_rank_decompose(const LinearMap<F>& m) {
  using T = typename F::value_type;
  const F& field = m.field;
  const std::size_t rows = m.codomain_dim, cols = m.domain_dim;
  std::vector<std::vector<T>> a(rows, std::vector<T>(cols, field.zero()));
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& [i, v] : m.columns[j]) a[i][j] = v;

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!field.is_zero(a[i][c])) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(a[r], a[sel]);
    T inv = field.inv(a[r][c]);
    for (std::size_t k = c; k < cols; ++k)
      if (!field.is_zero(a[r][k])) a[r][k] = field.mul(a[r][k], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || field.is_zero(a[i][c])) continue;
      T factor = field.neg(a[i][c]);
      for (std::size_t k = c; k < cols; ++k)
        if (!field.is_zero(a[r][k])) field.axpyin(a[i][k], factor, a[r][k]);
    }
    pivots.push_back(c);
    ++r;
  }

  std::map<std::size_t, SparseVec<F>> pivot_rows;
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    SparseVec<F> row;
    for (std::size_t c = 0; c < cols; ++c)
      if (!field.is_zero(a[k][c])) row.emplace(c, a[k][c]);
    pivot_rows.emplace(pivots[k], std::move(row));
  }

  RankDecomposition<F> out;
  out.rank = pivots.size();
  out.pivot_columns = pivots;
  out.kernel = kernel_from_reduced(field, cols, pivot_rows);
  for (std::size_t c : pivots) out.image.push_back(m.columns[c]);
  return out;
}

/// Sparse Gauss-Jordan.  The pivot is taken in a shortest active row, at the
/// column of that row with the fewest active occurrences (Markowitz count).
template <class F>
RankDecomposition<F> sparse_rank_decompose(const LinearMap<F>& m) {
  using T = typename F::value_type;
  const F& field = m.field;
  const std::size_t rows = m.codomain_dim, cols = m.domain_dim;

  std::vector<SparseVec<F>> row_data(rows);
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& [i, v] : m.columns[j]) row_data[i].emplace(j, v);

  std::vector<std::set<std::size_t>> col_rows(cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (const auto& [j, v] : row_data[i]) col_rows[j].insert(i);

  std::set<std::pair<std::size_t, std::size_t>> active;  // (nnz, row)
  std::vector<bool> is_active(rows, false);
  for (std::size_t i = 0; i < rows; ++i)
    if (!row_data[i].empty()) {
      active.emplace(row_data[i].size(), i);
      is_active[i] = true;
    }

  std::vector<std::size_t> active_in_col(cols, 0);
  for (std::size_t j = 0; j < cols; ++j) active_in_col[j] = col_rows[j].size();

  std::map<std::size_t, std::size_t> pivot_row_of_col;

  auto set_row = [&](std::size_t i, SparseVec<F> next) {
    for (const auto& [j, v] : row_data[i])
      if (!next.count(j)) {
        col_rows[j].erase(i);
        if (is_active[i]) --active_in_col[j];
      }
    for (const auto& [j, v] : next)
      if (!row_data[i].count(j)) {
        col_rows[j].insert(i);
        if (is_active[i]) ++active_in_col[j];
      }
    if (is_active[i]) {
      active.erase({row_data[i].size(), i});
      if (next.empty()) {
        is_active[i] = false;
      } else {
        active.emplace(next.size(), i);
      }
    }
    row_data[i] = std::move(next);
  };

  while (!active.empty()) {
    auto [nnz, r] = *active.begin();
    std::size_t best_col = 0, best_count = std::numeric_limits<std::size_t>::max();
    for (const auto& [j, v] : row_data[r]) {
      if (active_in_col[j] < best_count) {
        best_count = active_in_col[j];
        best_col = j;
      }
    }
    (void)nnz;
    const std::size_t c = best_col;
    T inv = field.inv(row_data[r].at(c));
    SparseVec<F> pivot_row = scaled(field, row_data[r], inv);
    set_row(r, pivot_row);
    // retire the pivot row from the active set
    active.erase({row_data[r].size(), r});
    is_active[r] = false;
    for (const auto& [j, v] : row_data[r]) --active_in_col[j];
    pivot_row_of_col[c] = r;

    std::vector<std::size_t> targets(col_rows[c].begin(), col_rows[c].end());
    for (std::size_t i : targets) {
      if (i == r) continue;
      SparseVec<F> next = row_data[i];
      T factor = field.neg(next.at(c));
      add_scaled(field, next, factor, pivot_row);
      set_row(i, std::move(next));
    }
  }

  std::map<std::size_t, SparseVec<F>> pivot_rows;
  for (const auto& [c, r] : pivot_row_of_col) pivot_rows.emplace(c, row_data[r]);

  RankDecomposition<F> out;
  out.rank = pivot_rows.size();
  for (const auto& [c, r] : pivot_row_of_col) out.pivot_columns.push_back(c);
  out.kernel = kernel_from_reduced(field, cols, pivot_rows);
  for (std::size_t c : out.pivot_columns) out.image.push_back(m.columns[c]);
  return out;
}

}  // namespace detail

/// Exact rank, kernel basis and image basis of `m`.
template <class F>
RankDecomposition<F> rank_decompose(const LinearMap<F>& m, std::size_t dense_limit = kDenseColumnLimit) {
  if (m.domain_dim < dense_limit) return detail::dense_rank_decompose(m);
  return detail::sparse_rank_decompose(m);
}

/**
 * Incrementally built echelon basis of a subspace.
 *
 * Each stored row has a distinct pivot (its lowest nonzero coordinate),
 * normalized to 1, and remembers how it is expressed in terms of the
 * generators inserted so far.  Reducing a vector against the basis yields a
 * residual supported off the pivots; the residual map is a projection whose
 * kernel is the span, which makes this the workhorse for quotients,
 * membership tests and coordinates.
 */
template <class F>
class EchelonBasis {
 public:
  using T = typename F::value_type;

  explicit EchelonBasis(F field) : field_(std::move(field)) {}

  struct Reduction {
    SparseVec<F> residual;
    SparseVec<F> combination;  // v = residual + sum combination[g] * generator_g
  };

  Reduction reduce(const SparseVec<F>& v) const {
    Reduction out{v, {}};
    auto it = out.residual.begin();
    while (it != out.residual.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const std::size_t pos = it->first;
      T coef = it->second;
      add_scaled(field_, out.residual, field_.neg(coef), row->second.vec);
      add_scaled(field_, out.combination, coef, row->second.combo);
      it = out.residual.lower_bound(pos);
    }
    return out;
  }

  /// Inserts a generator; returns true iff it enlarged the span.
  bool insert(const SparseVec<F>& v) {
    const std::size_t g = generators_++;
    Reduction red = reduce(v);
    if (red.residual.empty()) return false;
    const std::size_t pivot = red.residual.begin()->first;
    T inv = field_.inv(red.residual.begin()->second);
    SparseVec<F> combo;
    combo.emplace(g, field_.one());
    add_scaled(field_, combo, field_.neg(field_.one()), red.combination);
    rows_.emplace(pivot, Row{scaled(field_, red.residual, inv), scaled(field_, combo, inv)});
    return true;
  }

  bool contains(const SparseVec<F>& v) const { return reduce(v).residual.empty(); }

  /// Coefficients over the inserted generators when v lies in the span.
  std::optional<SparseVec<F>> coordinates(const SparseVec<F>& v) const {
    Reduction red = reduce(v);
    if (!red.residual.empty()) return std::nullopt;
    return red.combination;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t generators() const { return generators_; }
  bool is_pivot(std::size_t k) const { return rows_.count(k) > 0; }
  const F& field() const { return field_; }

 private:
  struct Row {
    SparseVec<F> vec;
    SparseVec<F> combo;
  };
  F field_;
  std::size_t generators_ = 0;
  std::map<std::size_t, Row> rows_;
};

}  // namespace mapcoh
