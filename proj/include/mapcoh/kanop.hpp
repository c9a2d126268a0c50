/**
 * @file kanop.hpp
 * @brief Tensor products under Δ, set-level mapping cosimplicial objects and
 * a finite check of the adjunction Cos(Z, X^K) ≅ sSet(K ⊗_Δ Z, X).
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mapcoh/errors.hpp"
#include "mapcoh/sset.hpp"
#include "mapcoh/sset_build.hpp"

namespace mapcoh {

/// The simplicial map Δ[m] -> Δ[n] induced by a monotone map (cells of simplex()).
inline SimplicialMap simplex_map(SSetPtr source, SSetPtr target, const MonotoneMap& phi) {
  auto label = [](const std::vector<int>& verts) {
    std::string s = "[";
    for (std::size_t k = 0; k < verts.size(); ++k) s += (k ? "," : "") + std::to_string(verts[k]);
    return s + "]";
  };
  std::vector<SimplexRef> images;
  for (CellId c = 0; c < source->size(); ++c) {
    const std::string& lab = source->label(c);
    std::vector<int> verts;
    std::size_t pos = 1;
    while (pos < lab.size() - 1) {
      std::size_t next = lab.find(',', pos);
      if (next == std::string::npos) next = lab.size() - 1;
      verts.push_back(std::stoi(lab.substr(pos, next - pos)));
      pos = next + 1;
    }
    std::vector<int> values, distinct, degens;
    for (int v : verts) values.push_back(phi.values.at(v));
    for (std::size_t k = 0; k < values.size(); ++k)
      if (distinct.empty() || distinct.back() != values[k]) distinct.push_back(values[k]);
    for (int j = static_cast<int>(values.size()) - 2; j >= 0; --j)
      if (values[j] == values[j + 1]) degens.push_back(j);
    images.push_back({target->at(label(distinct)), degens});
  }
  return SimplicialMap(std::move(source), std::move(target), std::move(images));
}

/**
 * A cosimplicial simplicial set stored for levels 0..top, with cofaces
 * d^i : Z[p-1] -> Z[p] and codegeneracies s^j : Z[p+1] -> Z[p].
 */
class CosimplicialSSet {
 public:
  CosimplicialSSet(std::string name, std::vector<SSetPtr> levels,
                   std::vector<std::vector<SimplicialMap>> cofaces,
                   std::vector<std::vector<SimplicialMap>> codegeneracies)
      : name_(std::move(name)),
        levels_(std::move(levels)),
        cofaces_(std::move(cofaces)),
        codegens_(std::move(codegeneracies)) {}

  /// Z[p] = Δ[p] with the standard cofaces and codegeneracies.
  static CosimplicialSSet yoneda(int top) {
    std::vector<SSetPtr> levels;
    for (int p = 0; p <= top; ++p) levels.push_back(std::make_shared<const FiniteSimplicialSet>(simplex(p)));
    std::vector<std::vector<SimplicialMap>> cof(top + 1), codeg(top + 1);
    for (int p = 1; p <= top; ++p)
      for (int i = 0; i <= p; ++i) cof[p].push_back(simplex_map(levels[p - 1], levels[p], MonotoneMap::coface(p, i)));
    for (int p = 0; p < top; ++p)
      for (int j = 0; j <= p; ++j)
        codeg[p].push_back(simplex_map(levels[p + 1], levels[p], MonotoneMap::codegeneracy(p, j)));
    return CosimplicialSSet("yoneda", std::move(levels), std::move(cof), std::move(codeg));
  }

  /// Z[p] = X for every p with identity operators.
  static CosimplicialSSet constant(SSetPtr X, int top) {
    std::vector<SSetPtr> levels(top + 1, X);
    std::vector<std::vector<SimplicialMap>> cof(top + 1), codeg(top + 1);
    for (int p = 1; p <= top; ++p) cof[p].assign(p + 1, SimplicialMap::identity(X));
    for (int p = 0; p < top; ++p) codeg[p].assign(p + 1, SimplicialMap::identity(X));
    return CosimplicialSSet("constant(" + X->name() + ")", std::move(levels), std::move(cof), std::move(codeg));
  }

  const std::string& name() const { return name_; }
  int top() const { return static_cast<int>(levels_.size()) - 1; }
  const SSetPtr& level(int p) const {
    if (p < 0 || p > top()) throw TruncationError("cosimplicial object not stored at level " + std::to_string(p));
    return levels_[p];
  }
  const SimplicialMap& coface(int p, int i) const { return cofaces_.at(p).at(i); }
  const SimplicialMap& codegeneracy(int p, int j) const { return codegens_.at(p).at(j); }

  /// Z(φ) for a monotone φ : [m] -> [n], by factoring into codegeneracies and cofaces.
  SimplicialMap apply(const MonotoneMap& phi) const {
    const int m = phi.source(), n = phi.target;
    if (!phi.valid()) throw InvalidInput("not a monotone map");
    level(m);
    level(n);
    for (int j = 0; j < m; ++j)
      if (phi.values[j] == phi.values[j + 1]) {
        MonotoneMap rest{n, {}};
        for (int k = 0; k <= m; ++k)
          if (k != j + 1) rest.values.push_back(phi.values[k]);
        return codegeneracy(m - 1, j).then(apply(rest));
      }
    for (int v = 0; v <= n; ++v)
      if (std::find(phi.values.begin(), phi.values.end(), v) == phi.values.end()) {
        MonotoneMap rest{n - 1, {}};
        for (int x : phi.values) rest.values.push_back(x < v ? x : x - 1);
        return apply(rest).then(coface(n, v));
      }
    return SimplicialMap::identity(levels_[m]);
  }

  /// First violated cosimplicial identity, if any.
  std::optional<std::string> check() const {
    const int t = top();
    auto eq = [](const SimplicialMap& a, const SimplicialMap& b) { return a == b; };
    for (int p = 0; p <= t; ++p) {
      for (int i = 0; p >= 1 && i <= p; ++i)
        if (auto e = coface(p, i).check()) return "coface: " + *e;
      for (int j = 0; p < t && j <= p; ++j)
        if (auto e = codegeneracy(p, j).check()) return "codegeneracy: " + *e;
    }
    for (int p = 2; p <= t; ++p)
      for (int j = 0; j <= p; ++j)
        for (int i = 0; i < j; ++i)
          if (!eq(coface(p - 1, i).then(coface(p, j)), coface(p - 1, j - 1).then(coface(p, i))))
            return "d^j d^i != d^i d^(j-1) at level " + std::to_string(p);
    for (int p = 1; p < t; ++p)
      for (int j = 0; j < p; ++j)
        for (int i = 0; i <= p + 1; ++i) {
          // s^j d^i : Z[p] -> Z[p+1] -> Z[p]
          SimplicialMap lhs = coface(p + 1, i).then(codegeneracy(p, j));
          SimplicialMap rhs;
          if (i < j)
            rhs = codegeneracy(p - 1, j - 1).then(coface(p, i));
          else if (i == j || i == j + 1)
            rhs = SimplicialMap::identity(levels_[p]);
          else
            rhs = codegeneracy(p - 1, j).then(coface(p, i - 1));
          if (!eq(lhs, rhs)) return "s^j d^i identity fails at level " + std::to_string(p);
        }
    for (int p = 0; p + 2 <= t; ++p)
      for (int j = 0; j <= p; ++j)
        for (int i = 0; i <= j; ++i)
          if (!eq(codegeneracy(p + 1, j + 1).then(codegeneracy(p, i)), codegeneracy(p + 1, i).then(codegeneracy(p, j))))
            return "s^j s^i identity fails at level " + std::to_string(p);
    return std::nullopt;
  }

 private:
  std::string name_;
  std::vector<SSetPtr> levels_;
  std::vector<std::vector<SimplicialMap>> cofaces_;
  std::vector<std::vector<SimplicialMap>> codegens_;
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// K ⊗_Δ Z together with the class of every generating pair (τ, z).
struct TensorUnderDelta {
  SSetPtr set;
  /// (nondegenerate cell τ of K, simplex z of Z[dim τ]) -> simplex of the result
  std::map<std::pair<CellId, SimplexRef>, SimplexRef> class_of;
  int trunc = 0;

  SimplexRef of(CellId tau, const SimplexRef& z) const {
    auto it = class_of.find({tau, z});
    if (it == class_of.end()) throw TruncationError("pair beyond the stored truncation");
    return it->second;
  }
};

/// Largest dimension of a nondegenerate generator (τ, z) with z nondegenerate in Z[dim τ].
inline int generator_dimension(const FiniteSimplicialSet& K, const CosimplicialSSet& Z) {
  int d = 0;
  for (int n = 0; n <= K.dim(); ++n)
    if (K.count(n) > 0) d = std::max(d, Z.level(n)->dim());
  return d;
}

/**
 * The coend ∫^n K_n × Z[n] in simplicial sets, computed levelwise by
 * union-find over pairs (τ nondegenerate, z in Z[dim τ]) with the relations
 * (d_i τ, z) ~ (τ, d^i z).  Cells are kept up to dimension `trunc`.
 */
inline TensorUnderDelta tensor_under_delta(const FiniteSimplicialSet& K, const CosimplicialSSet& Z, int trunc) {
  if (Z.top() < K.dim())
    throw TruncationError("cosimplicial object stored to level " + std::to_string(Z.top()) + " but dim K = " +
                          std::to_string(K.dim()));
  if (trunc < 0) throw InvalidInput("truncation must be nonnegative");
  TensorUnderDelta out;
  out.trunc = trunc;
  auto T = std::make_shared<FiniteSimplicialSet>(K.name() + "⊗" + Z.name());

  for (int d = 0; d <= trunc; ++d) {
    // generating pairs at level d
    std::vector<std::pair<CellId, SimplexRef>> pairs;
    std::map<std::pair<CellId, SimplexRef>, std::size_t> index;
    for (CellId tau = 0; tau < K.size(); ++tau)
      for (const auto& z : level_simplices(*Z.level(K.cell_dim(tau)), d)) {
        index.emplace(std::make_pair(tau, z), pairs.size());
        pairs.emplace_back(tau, z);
      }
    detail::UnionFind uf(pairs.size());
    for (CellId tau = 0; tau < K.size(); ++tau) {
      const int n = K.cell_dim(tau);
      for (int i = 0; n > 0 && i <= n; ++i) {
        const SimplexRef& f = K.face(tau, i);  // d_i τ = K(η) ρ
        const MonotoneMap eta = surjection_of(n - 1, f.degens);
        const SimplicialMap Zeta = Z.apply(eta);
        const SimplicialMap& Zd = Z.coface(n, i);
        for (const auto& z : level_simplices(*Z.level(n - 1), d))
          uf.unite(index.at({f.cell, Zeta.apply(z)}), index.at({tau, Zd.apply(z)}));
      }
    }
    // classes: degenerate if some member has a degenerate z
    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t k = 0; k < pairs.size(); ++k) members[uf.find(k)].push_back(k);
    for (const auto& [root, list] : members) {
      std::optional<std::size_t> degenerate_member;
      for (std::size_t k : list)
        if (pairs[k].second.degenerate()) {
          degenerate_member = k;
          break;
        }
      SimplexRef cls;
      if (degenerate_member) {
        const auto& [tau, z] = pairs[*degenerate_member];
        const int base = d - static_cast<int>(z.degens.size());
        const SimplexRef inner = out.of(tau, SimplexRef{z.cell, {}});
        cls = degenerate(inner, base, surjection_of(d, z.degens));
      } else {
        const auto& [tau, z] = pairs[list.front()];
        std::vector<SimplexRef> faces;
        for (int i = 0; d > 0 && i <= d; ++i) faces.push_back(out.of(tau, face_of(*Z.level(K.cell_dim(tau)), z, i)));
        std::string label = "(" + K.label(tau) + "," + Z.level(K.cell_dim(tau))->label(z.cell) + ")";
        if (T->find(label)) label += "#" + std::to_string(T->size());
        cls = SimplexRef{T->add_cell(label, d, std::move(faces)), {}};
      }
      for (std::size_t k : list) out.class_of.emplace(pairs[k], cls);
    }
  }
  out.set = T;
  return out;
}

/// The comparison K -> K ⊗_Δ Δ, τ ↦ [τ, ι_{dim τ}], for the Yoneda cosimplicial object.
inline SimplicialMap yoneda_comparison(SSetPtr K, const TensorUnderDelta& T, const CosimplicialSSet& Z) {
  std::vector<SimplexRef> images;
  for (CellId tau = 0; tau < K->size(); ++tau) {
    const auto& Zn = *Z.level(K->cell_dim(tau));
    const auto top = Zn.cells_of_dim(Zn.dim());
    if (top.size() != 1) throw InvalidInput("yoneda comparison needs Z[n] to have a single top cell");
    images.push_back(T.of(tau, SimplexRef{top.front(), {}}));
  }
  return SimplicialMap(K, T.set, std::move(images));
}

/// Whether f is an isomorphism of simplicial sets (simplicial and bijective on nondegenerate cells).
inline bool is_isomorphism(const SimplicialMap& f) {
  if (f.check()) return false;
  if (f.source().size() != f.target().size()) return false;
  std::set<CellId> hit;
  for (CellId c = 0; c < f.source().size(); ++c) {
    if (f.image(c).degenerate()) return false;
    hit.insert(f.image(c).cell);
  }
  return hit.size() == f.target().size();
}

/// X^K at the set level: level p is the set of functions K_p -> X (|X| = x).
class MappingCosimplicialSet {
 public:
  using Function = std::vector<int>;  // value per level simplex of K_p

  MappingCosimplicialSet(SSetPtr K, int x, int top) : K_(std::move(K)), x_(x), top_(top) {
    if (x < 0) throw InvalidInput("target set size must be nonnegative");
    for (int p = 0; p <= top; ++p) levels_.emplace_back(*K_, p);
  }

  int top() const { return top_; }
  const LevelIndex& simplices(int p) const { return levels_.at(p); }

  /// #X^{#K_p}, or nothing on overflow.
  std::optional<std::size_t> size(int p) const {
    std::size_t s = 1;
    for (std::size_t k = 0; k < levels_.at(p).size(); ++k) {
      if (s > (std::size_t(1) << 40) / std::max(x_, 1)) return std::nullopt;
      s *= static_cast<std::size_t>(x_);
    }
    return s;
  }

  std::vector<Function> elements(int p) const {
    auto n = size(p);
    if (!n || *n > 5'000'000) throw ResourceLimit("mapping set at level " + std::to_string(p) + " too large");
    std::vector<Function> out;
    Function f(levels_.at(p).size(), 0);
    for (std::size_t k = 0; k < *n; ++k) {
      out.push_back(f);
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (++f[i] < x_) break;
        f[i] = 0;
      }
    }
    return out;
  }

  /// X^K(φ) for φ : [m] -> [n]: precomposition with K(φ) : K_n -> K_m.
  Function apply(const MonotoneMap& phi, const Function& f) const {
    const int m = phi.source(), n = phi.target;
    Function out;
    for (const auto& s : levels_.at(n).simplices) out.push_back(f.at(levels_.at(m).of(apply_operator(*K_, phi, s))));
    return out;
  }

  /// Exhaustive check of the cosimplicial identities on all stored levels (p <= limit).
  std::optional<std::string> check(int limit) const {
    const int t = std::min(top_, limit);
    auto same = [&](int level, const MonotoneMap& a, const MonotoneMap& b) -> bool {
      for (const auto& f : elements(level))
        if (apply(a, f) != apply(b, f)) return false;
      return true;
    };
    using M = MonotoneMap;
    for (int p = 2; p <= t; ++p)
      for (int j = 0; j <= p; ++j)
        for (int i = 0; i < j; ++i)
          if (!same(p - 2, M::coface(p, j).after(M::coface(p - 1, i)), M::coface(p, i).after(M::coface(p - 1, j - 1))))
            return "d^j d^i identity fails at level " + std::to_string(p);
    for (int p = 1; p < t; ++p)
      for (int j = 0; j < p; ++j)
        for (int i = 0; i <= p + 1; ++i) {
          M lhs = M::codegeneracy(p, j).after(M::coface(p + 1, i));
          M rhs = (i < j)                ? M::coface(p, i).after(M::codegeneracy(p - 1, j - 1))
                  : (i == j || i == j + 1) ? M::identity(p)
                                           : M::coface(p, i - 1).after(M::codegeneracy(p - 1, j));
          if (!same(p, lhs, rhs)) return "s^j d^i identity fails at level " + std::to_string(p);
        }
    for (int p = 0; p + 2 <= t; ++p)
      for (int j = 0; j <= p; ++j)
        for (int i = 0; i <= j; ++i)
          if (!same(p + 2, M::codegeneracy(p, i).after(M::codegeneracy(p + 1, j + 1)),
                    M::codegeneracy(p, j).after(M::codegeneracy(p + 1, i))))
            return "s^j s^i identity fails at level " + std::to_string(p);
    return std::nullopt;
  }

 private:
  SSetPtr K_;
  int x_;
  int top_;
  std::vector<LevelIndex> levels_;
};

/// All simplicial maps K -> X, assigning images to cells in dimension order with face pruning.
inline std::vector<SimplicialMap> enumerate_hom(SSetPtr K, SSetPtr X, std::size_t limit = 1'000'000) {
  std::vector<CellId> order;
  for (int d = 0; d <= K->dim(); ++d)
    for (CellId c : K->cells_of_dim(d)) order.push_back(c);
  std::map<int, std::vector<SimplexRef>> candidates;
  for (int d = 0; d <= K->dim(); ++d) candidates[d] = level_simplices(*X, d);

  std::vector<SimplicialMap> out;
  std::vector<SimplexRef> images(K->size());
  auto image_of = [&](const SimplexRef& s) {
    return degenerate(images[s.cell], K->cell_dim(s.cell), surjection_of(K->level(s), s.degens));
  };
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == order.size()) {
      out.emplace_back(K, X, images);
      if (out.size() > limit) throw ResourceLimit("too many simplicial maps");
      return;
    }
    const CellId c = order[k];
    const int n = K->cell_dim(c);
    for (const auto& cand : candidates[n]) {
      bool ok = true;
      for (int i = 0; n > 0 && i <= n && ok; ++i) ok = face_of(*X, cand, i) == image_of(K->face(c, i));
      if (!ok) continue;
      images[c] = cand;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

/**
 * A cosimplicial map Z -> X^K as the family φ_τ : Z[dim τ] -> X over the
 * nondegenerate cells τ of K; the value at a degenerate simplex K(η)τ is φ_τ ∘ Z(η).
 */
using CompatibleFamily = std::vector<SimplicialMap>;

/// φ_α for an arbitrary simplex α of K.
inline SimplicialMap family_at(const CompatibleFamily& phi, const FiniteSimplicialSet& K, const CosimplicialSSet& Z,
                               const SimplexRef& alpha) {
  const int n = K.level(alpha);
  return Z.apply(surjection_of(n, alpha.degens)).then(phi.at(alpha.cell));
}

/// All compatible families: φ_{d_i τ} = φ_τ ∘ Z(δ^i) for every nondegenerate τ and face i.
inline std::vector<CompatibleFamily> enumerate_families(SSetPtr K, const CosimplicialSSet& Z, SSetPtr X) {
  if (Z.top() < K->dim()) throw TruncationError("cosimplicial object not stored up to dim K");
  std::vector<CellId> order;
  for (int d = 0; d <= K->dim(); ++d)
    for (CellId c : K->cells_of_dim(d)) order.push_back(c);
  std::map<int, std::vector<SimplicialMap>> homs;
  for (int d = 0; d <= K->dim(); ++d)
    if (K->count(d) > 0) homs[d] = enumerate_hom(Z.level(d), X);

  std::vector<CompatibleFamily> out;
  CompatibleFamily phi(K->size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == order.size()) {
      out.push_back(phi);
      return;
    }
    const CellId tau = order[k];
    const int n = K->cell_dim(tau);
    std::vector<SimplicialMap> face_values;
    for (int i = 0; n > 0 && i <= n; ++i) face_values.push_back(family_at(phi, *K, Z, K->face(tau, i)));
    for (const auto& cand : homs[n]) {
      bool ok = true;
      for (int i = 0; n > 0 && i <= n && ok; ++i) ok = Z.coface(n, i).then(cand) == face_values[i];
      if (!ok) continue;
      phi[tau] = cand;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

/// ψ(φ) : K ⊗_Δ Z -> X, [τ, z] ↦ φ_τ(z); throws if φ is not constant on a class.
inline SimplicialMap family_to_map(const CompatibleFamily& phi, const FiniteSimplicialSet& K,
                                   const TensorUnderDelta& T, SSetPtr X) {
  std::vector<std::optional<SimplexRef>> images(T.set->size());
  for (const auto& [pair, cls] : T.class_of) {
    const auto& [tau, z] = pair;
    SimplexRef value = phi.at(tau).apply(z);
    if (cls.degenerate()) continue;
    if (!images[cls.cell])
      images[cls.cell] = value;
    else if (*images[cls.cell] != value)
      throw InvariantViolation("family is not constant on the class of (" + K.label(tau) + ", ...)");
  }
  std::vector<SimplexRef> out;
  for (auto& im : images) {
    if (!im) throw TruncationError("a cell of the tensor product has no generating pair");
    out.push_back(*im);
  }
  return SimplicialMap(T.set, std::move(X), std::move(out));
}

struct AdjunctionReport {
  std::size_t left_count = 0;   // compatible families Z -> X^K
  std::size_t right_count = 0;  // simplicial maps K ⊗_Δ Z -> X
  bool bijection_ok = false;
  std::string detail;
};

/**
 * Enumerates both sides of Cos(Z, X^K) ≅ sSet(K ⊗_Δ Z, X) and checks that
 * φ ↦ ψ(φ) is a well-defined bijection.
 */
inline AdjunctionReport adjunction_check(SSetPtr K, const CosimplicialSSet& Z, SSetPtr X, int trunc) {
  const int need = generator_dimension(*K, Z);
  if (trunc < need)
    throw TruncationError("truncation " + std::to_string(trunc) + " is below the generator dimension " +
                          std::to_string(need) + " of K ⊗_Δ Z");
  AdjunctionReport rep;
  auto T = tensor_under_delta(*K, Z, trunc);
  auto families = enumerate_families(K, Z, X);
  auto maps = enumerate_hom(T.set, X);
  rep.left_count = families.size();
  rep.right_count = maps.size();
  std::set<std::vector<SimplexRef>> right;
  for (const auto& m : maps) right.insert(m.images());
  std::set<std::vector<SimplexRef>> hit;
  for (const auto& phi : families) {
    SimplicialMap psi = family_to_map(phi, *K, T, X);
    if (auto err = psi.check()) {
      rep.detail = "ψ(φ) is not simplicial: " + *err;
      return rep;
    }
    if (!right.count(psi.images())) {
      rep.detail = "ψ(φ) is not among the enumerated maps";
      return rep;
    }
    if (!hit.insert(psi.images()).second) {
      rep.detail = "ψ is not injective";
      return rep;
    }
  }
  rep.bijection_ok = hit.size() == right.size() && rep.left_count == rep.right_count;
  rep.detail = rep.bijection_ok ? "ψ is a bijection" : "ψ is not surjective";
  return rep;
}

/// g ⊗ Z : K ⊗_Δ Z -> K' ⊗_Δ Z for g : K -> K'.
inline SimplicialMap tensor_map(const SimplicialMap& g, const TensorUnderDelta& TK, const TensorUnderDelta& TL,
                                const CosimplicialSSet& Z) {
  std::vector<std::optional<SimplexRef>> images(TK.set->size());
  for (const auto& [pair, cls] : TK.class_of) {
    if (cls.degenerate() || images[cls.cell]) continue;
    const auto& [tau, z] = pair;
    const SimplexRef gt = g.image(tau);  // = K'(η) ρ
    const SimplexRef moved = Z.apply(surjection_of(g.source().cell_dim(tau), gt.degens)).apply(z);
    images[cls.cell] = TL.of(gt.cell, moved);
  }
  std::vector<SimplexRef> out;
  for (auto& im : images) out.push_back(im.value());
  return SimplicialMap(TK.set, TL.set, std::move(out));
}

/**
 * Naturality in K: for g : K -> K' and every family φ' for K', the family
 * g^*φ' (φ_α = φ'_{g α}) satisfies ψ(g^*φ') = ψ(φ') ∘ (g ⊗ Z).
 */
inline std::optional<std::string> naturality_check(const SimplicialMap& g, const CosimplicialSSet& Z, SSetPtr X,
                                                   int trunc) {
  if (auto err = g.check()) return "g is not simplicial: " + *err;
  const auto& K = g.source_ptr();
  const auto& L = g.target_ptr();
  auto TK = tensor_under_delta(*K, Z, trunc);
  auto TL = tensor_under_delta(*L, Z, trunc);
  auto gz = tensor_map(g, TK, TL, Z);
  if (auto err = gz.check()) return "g ⊗ Z is not simplicial: " + *err;
  for (const auto& phi : enumerate_families(L, Z, X)) {
    CompatibleFamily pulled;
    for (CellId c = 0; c < K->size(); ++c) pulled.push_back(family_at(phi, *L, Z, g.image(c)));
    auto lhs = family_to_map(pulled, *K, TK, X);
    auto rhs = gz.then(family_to_map(phi, *L, TL, X));
    if (!(lhs == rhs)) return "naturality square does not commute";
  }
  return std::nullopt;
}

}  // namespace mapcoh
