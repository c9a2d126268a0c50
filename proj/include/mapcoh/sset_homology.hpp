/**
 * @file sset_homology.hpp
 * @brief Normalized chains and cochains of finite simplicial sets.
 *
 * The normalized chain group N_n K has the nondegenerate n-cells as basis
 * (degenerate faces map to zero).  Cochains are the duals, with
 * δφ = φ∘∂, and the cup product is the Alexander-Whitney front/back face
 * formula.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mapcoh/complex.hpp"
#include "mapcoh/errors.hpp"
#include "mapcoh/field.hpp"
#include "mapcoh/linalg.hpp"
#include "mapcoh/smith.hpp"
#include "mapcoh/sset.hpp"

namespace mapcoh {

/// Integer coefficient of the normalized boundary ∂c = Σ (-1)^i d_i c, as (row, value) pairs.
inline std::vector<std::pair<std::size_t, long>> integral_boundary(const FiniteSimplicialSet& K, CellId c) {
  std::map<std::size_t, long> acc;
  const int n = K.cell_dim(c);
  for (int i = 0; n > 0 && i <= n; ++i) {
    const auto& f = K.face(c, i);
    if (f.degenerate()) continue;
    acc[K.position(f.cell)] += (i % 2 == 0) ? 1 : -1;
  }
  std::vector<std::pair<std::size_t, long>> out;
  for (const auto& [r, v] : acc)
    if (v != 0) out.emplace_back(r, v);
  return out;
}

/// Matrix of ∂_n : N_n -> N_{n-1}.
template <class F>
LinearMap<F> boundary_matrix(const FiniteSimplicialSet& K, const F& field, int n) {
  LinearMap<F> d(field, K.count(n), n > 0 ? K.count(n - 1) : 0);
  if (n <= 0) return d;
  for (CellId c : K.cells_of_dim(n))
    for (const auto& [r, v] : integral_boundary(K, c)) d.set(r, K.position(c), field.from_int(v));
  return d;
}

/// Normalized chain complex (step -1), degrees 0..dim K; optionally augmented in degree -1.
template <class F>
GradedComplex<F> chain_complex(const FiniteSimplicialSet& K, const F& field, bool augmented = false) {
  GradedComplex<F> C(field, -1);
  for (int n = 0; n <= K.dim(); ++n) {
    C.dims[n] = K.count(n);
    for (CellId c : K.cells_of_dim(n)) C.labels[n].push_back(K.label(c));
  }
  for (int n = 1; n <= K.dim(); ++n) C.differentials.emplace(n, boundary_matrix(K, field, n));
  C.dims[K.dim() + 1] = 0;
  if (augmented) {
    C.dims[-1] = 1;
    LinearMap<F> eps(field, K.count(0), 1);
    for (std::size_t k = 0; k < K.count(0); ++k) eps.set(0, k, field.one());
    C.differentials.emplace(0, std::move(eps));
  } else {
    C.dims[-1] = 0;
  }
  return C;
}

/// H_n(K; k) for n = 0..dim K (reduced when requested), with representative cycles.
template <class F>
std::vector<HomologyDegree<F>> homology(const FiniteSimplicialSet& K, const F& field, bool reduced = false) {
  return complex_homology(chain_complex(K, field, reduced), 0, K.dim());
}

template <class F>
std::vector<std::size_t> betti(const FiniteSimplicialSet& K, const F& field, bool reduced = false) {
  return betti_numbers(homology(K, field, reduced));
}

/// Normalized cochain complex (step +1), degrees 0..dim K.
template <class F>
GradedComplex<F> cochain_complex(const FiniteSimplicialSet& K, const F& field) {
  GradedComplex<F> C(field, 1);
  for (int n = 0; n <= K.dim(); ++n) {
    C.dims[n] = K.count(n);
    for (CellId c : K.cells_of_dim(n)) C.labels[n].push_back(K.label(c));
  }
  C.dims[-1] = 0;
  C.dims[K.dim() + 1] = 0;
  for (int n = 0; n < K.dim(); ++n) {
    LinearMap<F> d(field, K.count(n), K.count(n + 1));
    for (CellId c : K.cells_of_dim(n + 1))
      for (const auto& [r, v] : integral_boundary(K, c)) d.set(K.position(c), r, field.from_int(v));
    C.differentials.emplace(n, std::move(d));
  }
  return C;
}

template <class F>
std::vector<HomologyDegree<F>> cohomology(const FiniteSimplicialSet& K, const F& field) {
  return complex_homology(cochain_complex(K, field), 0, K.dim());
}

/// Front face: vertices 0..k of an n-simplex.
inline SimplexRef front_face(const FiniteSimplicialSet& K, const SimplexRef& s, int k) {
  const int n = K.level(s);
  MonotoneMap phi{n, {}};
  for (int v = 0; v <= k; ++v) phi.values.push_back(v);
  return apply_operator(K, phi, s);
}

/// Back face: vertices n-k..n of an n-simplex.
inline SimplexRef back_face(const FiniteSimplicialSet& K, const SimplexRef& s, int k) {
  const int n = K.level(s);
  MonotoneMap phi{n, {}};
  for (int v = n - k; v <= n; ++v) phi.values.push_back(v);
  return apply_operator(K, phi, s);
}

/// Alexander-Whitney cup product of a q-cochain and an r-cochain (coordinates by cell position).
template <class F>
SparseVec<F> cup_product(const FiniteSimplicialSet& K, const F& field, int q, const SparseVec<F>& x, int r,
                         const SparseVec<F>& y) {
  SparseVec<F> out;
  if (x.empty() || y.empty()) return out;
  for (CellId c : K.cells_of_dim(q + r)) {
    SimplexRef s{c, {}};
    SimplexRef a = front_face(K, s, q);
    if (a.degenerate()) continue;
    auto xa = x.find(K.position(a.cell));
    if (xa == x.end()) continue;
    SimplexRef b = back_face(K, s, r);
    if (b.degenerate()) continue;
    auto yb = y.find(K.position(b.cell));
    if (yb == y.end()) continue;
    add_term(field, out, K.position(c), field.mul(xa->second, yb->second));
  }
  return out;
}

/// The unit cochain (constant 1 on vertices).
template <class F>
SparseVec<F> unit_cochain(const FiniteSimplicialSet& K, const F& field) {
  SparseVec<F> u;
  for (std::size_t k = 0; k < K.count(0); ++k) u.emplace(k, field.one());
  return u;
}

/// f_# : N_n K -> N_n K' for a simplicial map.
template <class F>
LinearMap<F> induced_chain_map(const SimplicialMap& f, const F& field, int n) {
  const auto& K = f.source();
  const auto& L = f.target();
  LinearMap<F> m(field, K.count(n), L.count(n));
  for (CellId c : K.cells_of_dim(n)) {
    const auto& im = f.image(c);
    if (!im.degenerate()) m.set(L.position(im.cell), K.position(c), field.one());
  }
  return m;
}

/// Matrix of a chain map on H_n in representative coordinates (columns = source classes).
template <class F>
LinearMap<F> induced_on_homology(const LinearMap<F>& chain_map, const HomologyDegree<F>& source,
                                 const HomologyDegree<F>& target) {
  const F& field = chain_map.field;
  LinearMap<F> out(field, source.dim(), target.dim());
  for (std::size_t k = 0; k < source.dim(); ++k) {
    auto coords = target.class_of(chain_map.apply(source.representatives()[k]));
    if (!coords) throw InvariantViolation("chain map does not send cycles to cycles");
    for (std::size_t r = 0; r < coords->size(); ++r) out.set(r, k, (*coords)[r]);
  }
  return out;
}

/// Integral boundary matrix ∂_n (rows: (n-1)-cells, columns: n-cells).
inline IntMatrix integral_boundary_matrix(const FiniteSimplicialSet& K, int n) {
  IntMatrix m(n > 0 ? K.count(n - 1) : 0, K.count(n));
  if (n <= 0) return m;
  for (CellId c : K.cells_of_dim(n))
    for (const auto& [r, v] : integral_boundary(K, c)) m(r, K.position(c)) = v;
  return m;
}

/// Integral homology summary per degree: free rank and torsion invariant factors (> 1).
struct IntegralHomology {
  std::vector<std::size_t> free_rank;
  std::vector<std::vector<mpz_class>> torsion;

  /// dim H_n(K; F_p) predicted by the universal coefficient theorem.
  std::size_t mod_p_dim(int n, unsigned long p) const {
    std::size_t d = free_rank.at(n);
    auto count_p = [&](int m) {
      std::size_t c = 0;
      if (m < 0 || m >= static_cast<int>(torsion.size())) return c;
      for (const auto& t : torsion[m])
        if (t % p == 0) ++c;
      return c;
    };
    return d + count_p(n) + count_p(n - 1);
  }
};

/// Computes integral homology via Smith normal form of each boundary matrix.
inline IntegralHomology integral_homology(const FiniteSimplicialSet& K) {
  IntegralHomology out;
  std::vector<std::vector<mpz_class>> inv(K.dim() + 2);
  for (int n = 1; n <= K.dim(); ++n) inv[n] = smith_invariants(integral_boundary_matrix(K, n));
  for (int n = 0; n <= K.dim(); ++n) {
    const std::size_t rank_out = (n >= 1) ? inv[n].size() : 0;
    const std::size_t rank_in = inv[n + 1].size();
    out.free_rank.push_back(K.count(n) - rank_out - rank_in);
    std::vector<mpz_class> tors;
    for (const auto& d : inv[n + 1])
      if (d > 1) tors.push_back(d);
    out.torsion.push_back(std::move(tors));
  }
  return out;
}

/**
 * Bockstein β : H_n(K; F_p) -> H_{n-1}(K; F_p) for 0 → Z/p → Z/p² → Z/p → 0.
 *
 * A mod-p cycle is lifted to integer coefficients in [0, p), its integral
 * boundary is divisible by p, and the quotient reduced mod p is the image.
 */
inline LinearMap<PrimeField> bockstein(const FiniteSimplicialSet& K, const PrimeField& field, int n,
                                       const HomologyDegree<PrimeField>& source,
                                       const HomologyDegree<PrimeField>& target) {
  const long p = static_cast<long>(field.modulus());
  LinearMap<PrimeField> out(field, source.dim(), target.dim());
  if (n <= 0) return out;
  for (std::size_t k = 0; k < source.dim(); ++k) {
    std::map<std::size_t, long> boundary;
    for (const auto& [pos, v] : source.representatives()[k]) {
      CellId c = K.cells_of_dim(n)[pos];
      for (const auto& [r, coef] : integral_boundary(K, c)) boundary[r] += coef * static_cast<long>(v);
    }
    SparseVec<PrimeField> image;
    for (const auto& [r, v] : boundary) {
      if (v % p != 0) throw InvariantViolation("bockstein: lifted boundary not divisible by p");
      add_term(field, image, r, field.from_int(v / p));
    }
    auto coords = target.class_of(image);
    if (!coords) throw InvariantViolation("bockstein: image is not a cycle");
    for (std::size_t r = 0; r < coords->size(); ++r) out.set(r, k, (*coords)[r]);
  }
  return out;
}

}  // namespace mapcoh
