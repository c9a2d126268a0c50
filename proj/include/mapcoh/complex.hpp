/**
 * @file complex.hpp
 * @brief Graded complexes, bicomplexes, total complexes and normalization.
 *
 * A GradedComplex stores finitely many components on a contiguous range of
 * degrees together with the differentials between them.  The differential
 * raises degree by `step` (+1 for cochain complexes, -1 for chain
 * complexes), so the same code computes homology and cohomology.
 */
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mapcoh/errors.hpp"
#include "mapcoh/linalg.hpp"

namespace mapcoh {

template <class F>
struct GradedComplex {
  F field;
  int step = 1;
  std::map<int, std::size_t> dims;
  std::map<int, std::vector<std::string>> labels;
  /// differentials[n] : C^n -> C^{n+step}
  std::map<int, LinearMap<F>> differentials;

  explicit GradedComplex(F f, int step_ = 1) : field(std::move(f)), step(step_) {}

  std::size_t dim(int n) const {
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
  }

  /// d^n, or the zero map when either end is known to vanish.
  LinearMap<F> differential(int n) const {
    auto it = differentials.find(n);
    if (it != differentials.end()) return it->second;
    if (dim(n) == 0 || dim(n + step) == 0) return LinearMap<F>(field, dim(n), dim(n + step));
    throw InvalidInput("differential out of stored range at degree " + std::to_string(n));
  }

  bool has_differential(int n) const {
    return differentials.count(n) || dim(n) == 0 || dim(n + step) == 0;
  }

  /// Checks d∘d = 0 wherever two consecutive differentials are stored.
  std::optional<int> first_square_failure() const {
    for (const auto& [n, d] : differentials) {
      auto next = differentials.find(n + step);
      if (next == differentials.end()) continue;
      if (!next->second.after(d).is_zero()) return n;
    }
    return std::nullopt;
  }
};

/**
 * Cohomology (or homology) of a complex in one degree: H = ker d^n / im d^{n-step}.
 *
 * Representatives are kernel vectors independent modulo the image; the
 * stored echelon basis lets any cocycle be rewritten in representative
 * coordinates.
 */
template <class F>
class HomologyDegree {
 public:
  HomologyDegree(F field, int degree, const LinearMap<F>& incoming, const LinearMap<F>& outgoing)
      : degree_(degree), basis_(field) {
    auto in = rank_decompose(incoming);
    auto out = rank_decompose(outgoing);
    image_rank_ = in.rank;
    for (const auto& v : in.image) basis_.insert(v);
    for (const auto& z : out.kernel) {
      const std::size_t g = basis_.generators();
      if (basis_.insert(z)) {
        rep_of_generator_[g] = reps_.size();
        reps_.push_back(z);
      }
    }
  }

  int degree() const { return degree_; }
  std::size_t dim() const { return reps_.size(); }
  const std::vector<SparseVec<F>>& representatives() const { return reps_; }

  /// Coordinates of a cocycle's class in the representative basis.
  std::optional<std::vector<typename F::value_type>> class_of(const SparseVec<F>& cocycle) const {
    const F& field = basis_.field();
    auto coords = basis_.coordinates(cocycle);
    if (!coords) return std::nullopt;
    std::vector<typename F::value_type> out(reps_.size(), field.zero());
    for (const auto& [g, c] : *coords) {
      auto it = rep_of_generator_.find(g);
      if (it != rep_of_generator_.end()) out[it->second] = c;
    }
    return out;
  }

  /// True when the vector is a coboundary.
  bool is_boundary(const SparseVec<F>& v) const {
    auto c = class_of(v);
    if (!c) return false;
    const F& field = basis_.field();
    for (const auto& x : *c)
      if (!field.is_zero(x)) return false;
    return true;
  }

 private:
  int degree_;
  std::size_t image_rank_ = 0;
  EchelonBasis<F> basis_;
  std::vector<SparseVec<F>> reps_;
  std::map<std::size_t, std::size_t> rep_of_generator_;
};

/// Homology of `c` in degrees [lo, hi].  Requires stored differentials around the range.
template <class F>
std::vector<HomologyDegree<F>> complex_homology(const GradedComplex<F>& c, int lo, int hi) {
  std::vector<HomologyDegree<F>> out;
  for (int n = lo; n <= hi; ++n) {
    if (!c.has_differential(n - c.step) || !c.has_differential(n))
      throw InvalidInput("insufficient stored range for homology in degree " + std::to_string(n));
    out.emplace_back(c.field, n, c.differential(n - c.step), c.differential(n));
  }
  return out;
}

template <class F>
std::vector<std::size_t> betti_numbers(const std::vector<HomologyDegree<F>>& h) {
  std::vector<std::size_t> out;
  for (const auto& d : h) out.push_back(d.dim());
  return out;
}

/**
 * A bicomplex with horizontal ∂ : (p,q) -> (p-1,q) and vertical δ : (p,q) -> (p,q+1).
 */
template <class F>
struct Bicomplex {
  F field;
  std::map<std::pair<int, int>, std::size_t> dims;
  std::map<std::pair<int, int>, LinearMap<F>> horizontal;
  std::map<std::pair<int, int>, LinearMap<F>> vertical;

  explicit Bicomplex(F f) : field(std::move(f)) {}

  std::size_t dim(int p, int q) const {
    auto it = dims.find({p, q});
    return it == dims.end() ? 0 : it->second;
  }

  LinearMap<F> h(int p, int q) const {
    auto it = horizontal.find({p, q});
    if (it != horizontal.end()) return it->second;
    if (dim(p, q) == 0 || dim(p - 1, q) == 0) return LinearMap<F>(field, dim(p, q), dim(p - 1, q));
    throw InvalidInput("missing horizontal map at (" + std::to_string(p) + "," + std::to_string(q) + ")");
  }

  LinearMap<F> v(int p, int q) const {
    auto it = vertical.find({p, q});
    if (it != vertical.end()) return it->second;
    if (dim(p, q) == 0 || dim(p, q + 1) == 0) return LinearMap<F>(field, dim(p, q), dim(p, q + 1));
    throw InvalidInput("missing vertical map at (" + std::to_string(p) + "," + std::to_string(q) + ")");
  }

  /// First bidegree at which ∂² = 0, δ² = 0 or ∂δ = δ∂ fails, if any.
  std::optional<std::pair<int, int>> first_identity_failure() const {
    for (const auto& [pq, d] : dims) {
      auto [p, q] = pq;
      if (horizontal.count({p, q}) && horizontal.count({p - 1, q}) && !h(p - 1, q).after(h(p, q)).is_zero())
        return pq;
      if (vertical.count({p, q}) && vertical.count({p, q + 1}) && !v(p, q + 1).after(v(p, q)).is_zero())
        return pq;
      if (horizontal.count({p, q}) && vertical.count({p - 1, q}) && vertical.count({p, q}) &&
          horizontal.count({p, q + 1})) {
        if (!v(p - 1, q).after(h(p, q)).equals(h(p, q + 1).after(v(p, q)))) return pq;
      }
    }
    return std::nullopt;
  }
};

/// Offsets of the (p, q = n + p) summands inside total degree n.
struct TotalLayout {
  std::map<int, std::vector<std::pair<int, std::size_t>>> blocks;  // n -> [(p, offset)]
  std::map<int, std::size_t> dims;

  std::optional<std::size_t> offset(int n, int p) const {
    auto it = blocks.find(n);
    if (it == blocks.end()) return std::nullopt;
    for (const auto& [bp, off] : it->second)
      if (bp == p) return off;
    return std::nullopt;
  }
};

template <class F>
TotalLayout total_layout(const Bicomplex<F>& b, int n_lo, int n_hi) {
  TotalLayout layout;
  for (int n = n_lo; n <= n_hi; ++n) {
    std::size_t off = 0;
    for (const auto& [pq, d] : b.dims) {
      if (pq.second - pq.first != n || d == 0) continue;
      layout.blocks[n].emplace_back(pq.first, off);
      off += d;
    }
    layout.dims[n] = off;
  }
  return layout;
}

/**
 * Total complex |B|^n = ⊕_{q-p=n} B_{p,q}, with D = δ + (-1)^q ∂ on the (p,q) summand.
 *
 * Differentials are assembled for degrees n_lo .. n_hi - 1.
 */
template <class F>
GradedComplex<F> total_complex(const Bicomplex<F>& b, int n_lo, int n_hi, TotalLayout* layout_out = nullptr) {
  const F& field = b.field;
  TotalLayout layout = total_layout(b, n_lo, n_hi);
  GradedComplex<F> out(field, 1);
  for (int n = n_lo; n <= n_hi; ++n) out.dims[n] = layout.dims[n];
  for (int n = n_lo; n < n_hi; ++n) {
    LinearMap<F> d(field, layout.dims[n], layout.dims[n + 1]);
    for (const auto& [p, off] : layout.blocks[n]) {
      const int q = n + p;
      const auto sgn = sign_of(field, q);
      LinearMap<F> vert = b.v(p, q);
      LinearMap<F> horiz = b.h(p, q);
      auto voff = layout.offset(n + 1, p);
      auto hoff = layout.offset(n + 1, p - 1);
      for (std::size_t j = 0; j < b.dim(p, q); ++j) {
        auto& col = d.columns[off + j];
        if (voff)
          for (const auto& [i, v] : vert.columns[j]) add_term(field, col, *voff + i, v);
        else if (!vert.columns[j].empty())
          throw InvalidInput("vertical target outside stored range");
        if (hoff)
          for (const auto& [i, v] : horiz.columns[j]) add_term(field, col, *hoff + i, field.mul(sgn, v));
        else if (!horiz.columns[j].empty())
          throw InvalidInput("horizontal target outside stored range");
      }
    }
    out.differentials.emplace(n, std::move(d));
  }
  if (layout_out) *layout_out = layout;
  return out;
}

/// Basis of S_p / Σ_j im(s_j) and the projection onto it.
template <class F>
struct QuotientData {
  std::vector<std::size_t> basis;               // ambient coordinates kept (non-pivots)
  std::map<std::size_t, std::size_t> position;  // ambient coordinate -> quotient index
  LinearMap<F> projection;                      // ambient -> quotient

  SparseVec<F> project(const SparseVec<F>& v) const { return projection.apply(v); }
  /// Canonical lift: quotient basis vector k -> ambient unit vector.
  SparseVec<F> lift(std::size_t k, const F& field) const {
    SparseVec<F> v;
    v.emplace(basis.at(k), field.one());
    return v;
  }
};

/**
 * Normalization of one level of a simplicial vector space.
 *
 * `degeneracies[j]` is the matrix of s_j : S_{p-1} -> S_p.  The quotient basis
 * is the set of ambient coordinates that are not pivots of the echelon form
 * of the concatenated degeneracy images.
 */
template <class F>
QuotientData<F> normalize_quotient(const F& field, std::size_t ambient_dim,
                                   const std::vector<LinearMap<F>>& degeneracies) {
  EchelonBasis<F> span(field);
  for (const auto& s : degeneracies) {
    if (s.codomain_dim != ambient_dim) throw InvalidInput("degeneracy codomain does not match level dimension");
    for (const auto& col : s.columns) span.insert(col);
  }
  QuotientData<F> out{{}, {}, LinearMap<F>(field, ambient_dim, 0)};
  for (std::size_t k = 0; k < ambient_dim; ++k)
    if (!span.is_pivot(k)) {
      out.position[k] = out.basis.size();
      out.basis.push_back(k);
    }
  out.projection = LinearMap<F>(field, ambient_dim, out.basis.size());
  for (std::size_t k = 0; k < ambient_dim; ++k) {
    SparseVec<F> e;
    e.emplace(k, field.one());
    auto red = span.reduce(e).residual;
    SparseVec<F> col;
    for (const auto& [pos, v] : red) col.emplace(out.position.at(pos), v);
    out.projection.columns[k] = std::move(col);
  }
  return out;
}

}  // namespace mapcoh
