/**
 * @file sset_build.hpp
 * @brief Standard finite simplicial sets and constructions on them.
 *
 * Products enumerate their nondegenerate simplices directly: a tuple of
 * normal-form simplices at a common level is nondegenerate iff the
 * degeneracy words of the components share no index.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mapcoh/errors.hpp"
#include "mapcoh/sset.hpp"

namespace mapcoh {

/// The standard n-simplex Δ[n]; cells are labelled by their vertex lists, e.g. "[0,2]".
inline FiniteSimplicialSet simplex(int n) {
  if (n < 0) throw InvalidInput("simplex dimension must be nonnegative");
  if (n > 20) throw ResourceLimit("simplex dimension above 20");
  FiniteSimplicialSet K("Delta" + std::to_string(n));
  auto label = [](const std::vector<int>& verts) {
    std::string s = "[";
    for (std::size_t k = 0; k < verts.size(); ++k) s += (k ? "," : "") + std::to_string(verts[k]);
    return s + "]";
  };
  // all vertex subsets, by size then lexicographically
  for (int d = 0; d <= n; ++d) {
    std::vector<std::vector<int>> subsets;
    for (std::uint32_t mask = 0; mask < (1u << (n + 1)); ++mask) {
      if (__builtin_popcount(mask) != d + 1) continue;
      std::vector<int> verts;
      for (int v = 0; v <= n; ++v)
        if (mask & (1u << v)) verts.push_back(v);
      subsets.push_back(verts);
    }
    std::sort(subsets.begin(), subsets.end());
    for (const auto& verts : subsets) {
      std::vector<SimplexRef> faces;
      for (int i = 0; d > 0 && i <= d; ++i) {
        auto f = verts;
        f.erase(f.begin() + i);
        faces.push_back({K.at(label(f)), {}});
      }
      K.add_cell(label(verts), d, std::move(faces));
    }
  }
  return K;
}

/// S^n with one 0-cell "*" and one n-cell "e" (S^0: two points "*" and "e").
inline FiniteSimplicialSet minimal_sphere(int n) {
  if (n < 0) throw InvalidInput("sphere dimension must be nonnegative");
  FiniteSimplicialSet K("S" + std::to_string(n));
  CellId base = K.add_cell("*", 0);
  if (n == 0) {
    K.add_cell("e", 0);
  } else {
    std::vector<int> word;
    for (int j = n - 2; j >= 0; --j) word.push_back(j);
    std::vector<SimplexRef> faces(n + 1, SimplexRef{base, word});
    K.add_cell("e", n, std::move(faces));
  }
  K.set_basepoint(base);
  return K;
}

/**
 * The m-gon with vertices v0..v{m-1} and edges e_i joining v_i and v_{i+1}.
 *
 * By default every edge runs from v_i to v_{i+1}, so rotations are
 * simplicial.  With `alternating` (m even) odd-numbered edges run
 * backwards, which makes the reflection v_i -> v_{-i} simplicial instead.
 */
inline FiniteSimplicialSet polygon(int m, bool alternating = false) {
  if (m < 3) throw InvalidInput("polygon needs at least 3 vertices");
  if (alternating && m % 2 != 0) throw InvalidInput("alternating polygon needs an even number of vertices");
  FiniteSimplicialSet K(alternating ? "zigzag" + std::to_string(m) : "polygon" + std::to_string(m));
  for (int i = 0; i < m; ++i) K.add_cell("v" + std::to_string(i), 0);
  for (int i = 0; i < m; ++i) {
    SimplexRef a{static_cast<CellId>(i), {}}, b{static_cast<CellId>((i + 1) % m), {}};
    if (alternating && i % 2 == 1) std::swap(a, b);
    K.add_cell("e" + std::to_string(i), 1, {b, a});
  }
  K.set_basepoint(0);
  return K;
}

/// Wedge of pointed sets; non-base cells of summand k are labelled "k:label".
inline FiniteSimplicialSet wedge(const std::vector<FiniteSimplicialSet>& summands) {
  if (summands.empty()) throw InvalidInput("wedge of an empty list");
  FiniteSimplicialSet W("wedge");
  CellId base = W.add_cell("*", 0);
  W.set_basepoint(base);
  for (std::size_t k = 0; k < summands.size(); ++k) {
    const auto& S = summands[k];
    if (!S.pointed()) throw InvalidInput("wedge summands must be pointed");
    std::vector<CellId> map(S.size());
    map[*S.basepoint()] = base;
    for (int d = 0; d <= S.dim(); ++d)
      for (CellId c : S.cells_of_dim(d)) {
        if (c == *S.basepoint()) continue;
        std::vector<SimplexRef> faces;
        for (const auto& f : S.cell(c).faces) faces.push_back({map[f.cell], f.degens});
        map[c] = W.add_cell(std::to_string(k) + ":" + S.label(c), d, std::move(faces));
      }
  }
  return W;
}

/// A product of simplicial sets together with its component data.
struct ProductSet {
  SSetPtr set;
  std::vector<SSetPtr> factors;
  int dim_bound = 0;
  std::vector<std::vector<SimplexRef>> components;  // per product cell
  std::map<std::vector<SimplexRef>, CellId> index;

  /// Normal form in the product of a tuple of simplices at a common level.
  SimplexRef normalize(const std::vector<SimplexRef>& tuple) const {
    if (tuple.size() != factors.size()) throw InvalidInput("tuple length does not match the product");
    const int n = factors[0]->level(tuple[0]);
    std::set<int> common(tuple[0].degens.begin(), tuple[0].degens.end());
    for (std::size_t k = 1; k < tuple.size(); ++k) {
      if (factors[k]->level(tuple[k]) != n) throw InvalidInput("tuple components at different levels");
      std::set<int> next;
      for (int j : tuple[k].degens)
        if (common.count(j)) next.insert(j);
      common = std::move(next);
    }
    std::vector<int> word(common.rbegin(), common.rend());
    MonotoneMap tau = surjection_of(n, word);
    std::vector<SimplexRef> stripped;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      MonotoneMap eta = surjection_of(n, tuple[k].degens);
      MonotoneMap reduced{eta.target, std::vector<int>(tau.target + 1, 0)};
      for (int i = 0; i <= n; ++i) reduced.values[tau.values[i]] = eta.values[i];
      stripped.push_back({tuple[k].cell, degens_of(reduced)});
    }
    auto it = index.find(stripped);
    if (it == index.end()) throw ResourceLimit("product simplex beyond the enumerated dimension bound");
    return {it->second, std::move(word)};
  }

  /// The components of an arbitrary product simplex.
  std::vector<SimplexRef> split(const SimplexRef& s) const {
    std::vector<SimplexRef> out;
    const int n = set->level(s);
    const int d = set->cell_dim(s.cell);
    for (std::size_t k = 0; k < factors.size(); ++k)
      out.push_back(degenerate(components[s.cell][k], d, surjection_of(n, s.degens)));
    return out;
  }
};

/**
 * Cartesian product of finitely many simplicial sets, with nondegenerate
 * cells enumerated up to `dim_bound`.
 */
inline ProductSet product(const std::vector<SSetPtr>& factors, int dim_bound) {
  if (factors.empty()) throw InvalidInput("product of an empty list");
  if (dim_bound < 0) throw InvalidInput("negative dimension bound");
  const std::size_t m = factors.size();
  ProductSet P;
  P.factors = factors;
  P.dim_bound = dim_bound;
  std::string name;
  for (std::size_t k = 0; k < m; ++k) name += (k ? "x" : "") + factors[k]->name();
  auto S = std::make_shared<FiniteSimplicialSet>(name);

  std::size_t total_cells = 0;
  for (int n = 0; n <= dim_bound; ++n) {
    std::vector<std::vector<SimplexRef>> found;
    std::vector<SimplexRef> tuple(m);
    // choose a cell and a degeneracy word per factor; track the running intersection
    std::function<void(std::size_t, std::uint64_t, int)> rec = [&](std::size_t k, std::uint64_t common,
                                                                    int remaining_cover) {
      if (k == m) {
        if (common == 0) found.push_back(tuple);
        return;
      }
      if (remaining_cover < __builtin_popcountll(common)) return;
      const auto& F = *factors[k];
      for (CellId c = 0; c < F.size(); ++c) {
        const int d = F.cell_dim(c);
        if (d > n) continue;
        int rest = 0;
        for (std::size_t l = k + 1; l < m; ++l) rest += std::min(factors[l]->dim(), n);
        for (auto& word : degeneracy_words(n, n - d)) {
          std::uint64_t mask = 0;
          for (int j : word) mask |= (1ULL << j);
          std::uint64_t next = common & mask;
          if (rest < __builtin_popcountll(next)) continue;
          tuple[k] = {c, word};
          rec(k + 1, next, rest);
        }
      }
    };
    if (n >= 64) throw ResourceLimit("product dimension bound too large");
    const std::uint64_t all = (n == 0) ? 0 : ((1ULL << n) - 1);
    int cover = 0;
    for (const auto& F : factors) cover += std::min(F->dim(), n);
    rec(0, all, cover);
    total_cells += found.size();
    if (total_cells > 2000000) throw ResourceLimit("product has too many nondegenerate cells");
    std::sort(found.begin(), found.end());
    for (auto& t : found) {
      std::string label = "(";
      for (std::size_t k = 0; k < m; ++k) label += (k ? "," : "") + factors[k]->simplex_label(t[k]);
      label += ")";
      std::vector<SimplexRef> faces;
      for (int i = 0; n > 0 && i <= n; ++i) {
        std::vector<SimplexRef> ft;
        for (std::size_t k = 0; k < m; ++k) ft.push_back(face_of(*factors[k], t[k], i));
        faces.push_back(P.normalize(ft));
      }
      CellId id = S->add_cell(label, n, std::move(faces));
      P.index.emplace(t, id);
      P.components.push_back(std::move(t));
    }
  }
  bool all_pointed = true;
  for (const auto& F : factors) all_pointed = all_pointed && F->pointed();
  if (all_pointed) {
    std::vector<SimplexRef> base;
    for (const auto& F : factors) base.push_back({*F->basepoint(), {}});
    S->set_basepoint(P.index.at(base));
  }
  P.set = S;
  return P;
}

inline ProductSet product(const FiniteSimplicialSet& K, const FiniteSimplicialSet& L, int dim_bound) {
  return product({std::make_shared<FiniteSimplicialSet>(K), std::make_shared<FiniteSimplicialSet>(L)}, dim_bound);
}

/// A quotient K / A together with the quotient map on cells.
struct QuotientSet {
  SSetPtr set;
  std::vector<SimplexRef> cell_image;  // per cell of K, its image (a simplex of the quotient)
};

/// Collapses a face-closed set of cells to a basepoint "*".
inline QuotientSet quotient(const FiniteSimplicialSet& K, const std::set<CellId>& collapse, std::string name = {}) {
  for (CellId c : collapse) {
    if (c >= K.size()) throw InvalidInput("collapse set references an unknown cell");
    for (const auto& f : K.cell(c).faces)
      if (!collapse.count(f.cell))
        throw InvalidInput("collapse set is not closed under faces (cell '" + K.label(c) + "')");
  }
  auto Q = std::make_shared<FiniteSimplicialSet>(name.empty() ? K.name() + "/~" : name);
  CellId base = Q->add_cell("*", 0);
  Q->set_basepoint(base);
  auto point_at = [&](int level) {
    std::vector<int> word;
    for (int j = level - 1; j >= 0; --j) word.push_back(j);
    return SimplexRef{base, word};
  };
  QuotientSet out;
  out.cell_image.resize(K.size());
  for (int d = 0; d <= K.dim(); ++d)
    for (CellId c : K.cells_of_dim(d)) {
      if (collapse.count(c)) {
        out.cell_image[c] = point_at(d);
        continue;
      }
      std::vector<SimplexRef> faces;
      for (const auto& f : K.cell(c).faces)
        faces.push_back(degenerate(out.cell_image[f.cell], K.cell_dim(f.cell), surjection_of(d - 1, f.degens)));
      std::string label = K.label(c) == "*" ? "*'" : K.label(c);
      out.cell_image[c] = {Q->add_cell(label, d, std::move(faces)), {}};
    }
  out.set = Q;
  return out;
}

/// Smash product K ∧ L = (K × L) / (K ∨ L).
struct SmashSet {
  ProductSet product;
  QuotientSet quotient;
  const FiniteSimplicialSet& set() const { return *quotient.set; }
};

inline SmashSet smash(const FiniteSimplicialSet& K, const FiniteSimplicialSet& L) {
  if (!K.pointed() || !L.pointed()) throw InvalidInput("smash product needs pointed sets");
  SmashSet out;
  out.product = product(K, L, K.dim() + L.dim());
  std::set<CellId> wedge_cells;
  for (CellId c = 0; c < out.product.set->size(); ++c) {
    const auto& comp = out.product.components[c];
    if (comp[0].cell == *K.basepoint() || comp[1].cell == *L.basepoint()) wedge_cells.insert(c);
  }
  out.quotient = quotient(*out.product.set, wedge_cells, K.name() + "^" + L.name());
  return out;
}

/// The switch (x, y) -> (y, x) on K ∧ K.
inline SimplicialMap smash_switch(const SmashSet& S) {
  const auto& P = S.product;
  if (P.factors[0]->size() != P.factors[1]->size()) throw InvalidInput("switch needs equal factors");
  std::vector<SimplexRef> images;
  const auto& Q = *S.quotient.set;
  // quotient cells other than "*" come from product cells in order
  std::vector<CellId> source_of(Q.size(), 0);
  for (CellId c = 0; c < P.set->size(); ++c) {
    const auto& im = S.quotient.cell_image[c];
    if (!im.degenerate() && im.cell != *Q.basepoint()) source_of[im.cell] = c;
  }
  for (CellId q = 0; q < Q.size(); ++q) {
    if (q == *Q.basepoint()) {
      images.push_back({q, {}});
      continue;
    }
    const auto& comp = P.components[source_of[q]];
    SimplexRef swapped = P.normalize({comp[1], comp[0]});
    images.push_back(degenerate(S.quotient.cell_image[swapped.cell], P.set->cell_dim(swapped.cell),
                                surjection_of(P.set->level(swapped), swapped.degens)));
  }
  return SimplicialMap(S.quotient.set, S.quotient.set, std::move(images));
}

/**
 * Mapping cone of f : X -> Y, built as (X × Δ[1]) ∪_f Y with X × {1}
 * collapsed to an apex.  The base is X × {0}.
 */
inline FiniteSimplicialSet mapping_cone(const SimplicialMap& f, std::string name = {}) {
  const auto& X = f.source();
  const auto& Y = f.target();
  auto interval = std::make_shared<FiniteSimplicialSet>(simplex(1));
  ProductSet P = product({f.source_ptr(), interval}, X.dim() + 1);
  const CellId v0 = interval->at("[0]"), v1 = interval->at("[1]");

  FiniteSimplicialSet C(name.empty() ? "cone(" + X.name() + "->" + Y.name() + ")" : name);
  // copy Y keeping its cell ids (cells are added in id order, which is dimension-compatible)
  for (CellId c = 0; c < Y.size(); ++c) C.add_cell(Y.label(c), Y.cell_dim(c), Y.cell(c).faces);
  if (Y.pointed()) C.set_basepoint(*Y.basepoint());
  const CellId apex = C.add_cell("apex", 0);

  std::vector<SimplexRef> image(P.set->size());
  auto collapse_to_apex = [&](int level) {
    std::vector<int> word;
    for (int j = level - 1; j >= 0; --j) word.push_back(j);
    return SimplexRef{apex, word};
  };
  const auto& PS = *P.set;
  for (int d = 0; d <= PS.dim(); ++d)
    for (CellId c : PS.cells_of_dim(d)) {
      const auto& comp = P.components[c];
      if (comp[1].cell == v0) {
        image[c] = f.apply(comp[0]);
      } else if (comp[1].cell == v1) {
        image[c] = collapse_to_apex(d);
      } else {
        std::vector<SimplexRef> faces;
        for (const auto& fc : PS.cell(c).faces)
          faces.push_back(degenerate(image[fc.cell], PS.cell_dim(fc.cell), surjection_of(d - 1, fc.degens)));
        image[c] = {C.add_cell("[" + PS.label(c) + "]", d, std::move(faces)), {}};
      }
    }
  return C;
}

/// Moore space M(Z/p, 1): the cone of the degree-p map polygon(p) -> S^1.
inline FiniteSimplicialSet moore(int n, int p) {
  if (n != 1) throw InvalidInput("moore spaces are provided for n = 1 only");
  if (p < 2) throw InvalidInput("moore space needs p >= 2");
  // p = 2 uses a 4-gon whose edges alternately wrap the circle and collapse
  const int m = (p == 2) ? 4 : p;
  auto X = std::make_shared<FiniteSimplicialSet>(polygon(m));
  auto S1 = std::make_shared<FiniteSimplicialSet>(minimal_sphere(1));
  const CellId base = *S1->basepoint(), e = S1->at("e");
  std::vector<SimplexRef> images;
  for (CellId c = 0; c < X->size(); ++c) {
    if (X->cell_dim(c) == 0)
      images.push_back({base, {}});
    else if (p == 2 && (c - m) % 2 == 1)
      images.push_back({base, {0}});
    else
      images.push_back({e, {}});
  }
  SimplicialMap f(X, S1, std::move(images));
  auto M = mapping_cone(f, "M1(" + std::to_string(p) + ")");
  M.set_basepoint(M.at("*"));
  return M;
}

}  // namespace mapcoh
