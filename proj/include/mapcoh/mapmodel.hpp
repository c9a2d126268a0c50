/**
 * @file mapmodel.hpp
 * @brief The normalized cochain bicomplex of a cosimplicial mapping space.
 *
 * For a finite simplicial set K and coefficients Y, column p of the
 * bicomplex is a cochain model of Y^{K_p}, with horizontal maps induced by
 * the faces d_i : K_p -> K_{p-1}.  Two column models are provided:
 *
 *  - TensorColumns: A^{⊗K_p} for a free graded-commutative algebra A; a set
 *    map u : K_p -> K_{p'} acts by multiplying tensor factors along its
 *    fibres (the Loday functor), with Koszul signs from the fixed order of
 *    K_p.  Normalization keeps the tensor words whose support is contained
 *    in no degeneracy image.
 *  - SimplicialColumns: normalized simplicial cochains of L^{×#K_p}, where
 *    u acts by pulling back along the coordinate map (y_t) -> (y_{u(s)}).
 *    Normalization is the literal quotient by degeneracy images.
 *
 * Columns are truncated at p <= p_max and q - p <= N + 1.  The product of
 * x in N_p C^r and y in N_q C^s is
 *   x·y = (-1)^{p s} Σ_{(μ,ν)} (-1)^{ε(μ)} s_ν x ∪ s_μ y,
 * where μ runs over p-subsets of {0..p+q-1}, ν is its complement and
 * ε(μ) = Σ_i (μ_i - i).  The factor (-1)^{p s} is what makes the product
 * satisfy the Leibniz rule for D = δ + (-1)^q ∂.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mapcoh/action.hpp"
#include "mapcoh/complex.hpp"
#include "mapcoh/errors.hpp"
#include "mapcoh/field.hpp"
#include "mapcoh/gcalg.hpp"
#include "mapcoh/linalg.hpp"
#include "mapcoh/sset.hpp"
#include "mapcoh/sset_build.hpp"
#include "mapcoh/sset_homology.hpp"

namespace mapcoh {

/// A (p,q)-shuffle: μ is a p-subset of {0..p+q-1}, ν its complement.
struct Shuffle {
  std::vector<int> mu;
  std::vector<int> nu;
  long sign_exponent = 0;  // Σ (μ_i - i)
};

inline std::vector<Shuffle> shuffles(int p, int q) {
  std::vector<Shuffle> out;
  const int n = p + q;
  for (const auto& word : degeneracy_words(n, p)) {
    Shuffle s;
    s.mu.assign(word.rbegin(), word.rend());
    for (int k = 0; k < n; ++k)
      if (std::find(s.mu.begin(), s.mu.end(), k) == s.mu.end()) s.nu.push_back(k);
    for (int i = 0; i < p; ++i) s.sign_exponent += s.mu[i] - i;
    out.push_back(std::move(s));
  }
  return out;
}

/// The surjection [p+q] -> [p+q-|word|] applying the degeneracies in `indices` (increasing).
inline MonotoneMap shuffle_surjection(int level, const std::vector<int>& indices) {
  return surjection_of(level, std::vector<int>(indices.rbegin(), indices.rend()));
}

/// Levels of K with index maps for faces, degeneracies and shuffle degeneracies.
class LevelCache {
 public:
  LevelCache(SSetPtr K, bool reversed) : K_(std::move(K)), reversed_(reversed) {}

  const FiniteSimplicialSet& space() const { return *K_; }
  const SSetPtr& space_ptr() const { return K_; }
  bool reversed() const { return reversed_; }

  const LevelIndex& level(int p) {
    auto it = levels_.find(p);
    if (it == levels_.end()) {
      if (p > 62) throw ResourceLimit("level above 62");
      it = levels_.emplace(p, LevelIndex(*K_, p, reversed_)).first;
    }
    return it->second;
  }

  /// d_i : K_p -> K_{p-1} as an index map.
  const std::vector<std::uint32_t>& face(int p, int i) {
    auto key = std::make_pair(p, i);
    auto it = faces_.find(key);
    if (it != faces_.end()) return it->second;
    const auto& src = level(p);
    const auto& dst = level(p - 1);
    std::vector<std::uint32_t> map;
    for (const auto& s : src.simplices) map.push_back(static_cast<std::uint32_t>(dst.of(face_of(*K_, s, i))));
    return faces_.emplace(key, std::move(map)).first->second;
  }

  /// s_j : K_{p-1} -> K_p as an index map.
  const std::vector<std::uint32_t>& degeneracy(int p, int j) {
    auto key = std::make_pair(p, j);
    auto it = degens_.find(key);
    if (it != degens_.end()) return it->second;
    const auto& src = level(p - 1);
    const auto& dst = level(p);
    std::vector<std::uint32_t> map;
    for (const auto& s : src.simplices) map.push_back(static_cast<std::uint32_t>(dst.of(degeneracy_of(*K_, s, j))));
    return degens_.emplace(key, std::move(map)).first->second;
  }

  /// The composite degeneracy K_from -> K_to applying s at the increasing `indices`.
  std::vector<std::uint32_t> iterated_degeneracy(int from, int to, const std::vector<int>& indices) {
    const auto& src = level(from);
    const auto& dst = level(to);
    MonotoneMap sigma = shuffle_surjection(to, indices);
    std::vector<std::uint32_t> map;
    for (const auto& s : src.simplices) map.push_back(static_cast<std::uint32_t>(dst.of(degenerate(s, from, sigma))));
    return map;
  }

  /// The permutation of K_p induced by an automorphism.
  std::vector<std::uint32_t> permutation(const SimplicialMap& g, int p) {
    const auto& lv = level(p);
    std::vector<std::uint32_t> map;
    for (const auto& s : lv.simplices) map.push_back(static_cast<std::uint32_t>(lv.of(g.apply(s))));
    return map;
  }

  /// Bitmask of the positions j in [0, p) not in the degeneracy word of each level simplex.
  const std::vector<std::uint64_t>& cover(int p) {
    auto it = covers_.find(p);
    if (it != covers_.end()) return it->second;
    std::vector<std::uint64_t> masks;
    const std::uint64_t all = (p == 0) ? 0 : ((1ULL << p) - 1);
    for (const auto& s : level(p).simplices) {
      std::uint64_t m = all;
      for (int j : s.degens) m &= ~(1ULL << j);
      masks.push_back(m);
    }
    return covers_.emplace(p, std::move(masks)).first->second;
  }

 private:
  SSetPtr K_;
  bool reversed_;
  std::map<int, LevelIndex> levels_;
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> faces_;
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> degens_;
  std::map<int, std::vector<std::uint64_t>> covers_;
};

/**
 * Interface of a column model: the normalized columns N_p C^q with the
 * induced horizontal and vertical maps, the product and group actions.
 */
template <class F>
class ColumnModel {
 public:
  virtual ~ColumnModel() = default;

  virtual const F& field() const = 0;
  /// Columns are needed for q - p <= top.
  virtual void set_top_degree(int top) = 0;
  virtual std::size_t dim(int p, int q) = 0;
  /// Σ (-1)^i ∂_i on normalized columns: N_p C^q -> N_{p-1} C^q.
  virtual LinearMap<F> horizontal(int p, int q) = 0;
  /// Internal differential N_p C^q -> N_p C^{q+1}.
  virtual LinearMap<F> vertical(int p, int q) = 0;
  /// x·y for x in N_p C^r, y in N_q C^s (result in N_{p+q} C^{r+s}).
  virtual SparseVec<F> multiply(int p, int r, const SparseVec<F>& x, int q, int s, const SparseVec<F>& y) = 0;
  /// The unit of N_0 C^0.
  virtual SparseVec<F> unit() = 0;
  /// The action of an automorphism of K on N_p C^q.
  virtual LinearMap<F> act(const SimplicialMap& g, int p, int q) = 0;
  /// First violated d_i d_j = d_{j-1} d_i at level p on unnormalized faces, if any.
  virtual std::optional<std::string> face_identity_failure(int p) = 0;
  virtual std::string name() const = 0;
};

/// A tensor word: the non-unit factors (position in K_p, monomial id), sorted by position.
using TensorWord = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct TensorWordHash {
  std::size_t operator()(const TensorWord& w) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& [a, b] : w) {
      h = (h ^ a) * 1099511628211ULL;
      h = (h ^ (b + 0x9e37u)) * 1099511628211ULL;
    }
    return h;
  }
};

/**
 * Columns A^{⊗K_p} for a free graded-commutative algebra A.
 */
template <class F>
class TensorColumns : public ColumnModel<F> {
 public:
  using T = typename F::value_type;

  TensorColumns(SSetPtr K, std::shared_ptr<const FreeGCAlgebra<F>> A, bool reversed = false,
                std::size_t max_column = 4'000'000)
      : levels_(std::move(K), reversed), A_(std::move(A)), max_column_(max_column) {}

  const F& field() const override { return A_->field(); }
  const FreeGCAlgebra<F>& algebra() const { return *A_; }
  LevelCache& levels() { return levels_; }

  void set_top_degree(int top) override {
    if (top != top_) {
      top_ = top;
      columns_.clear();
      enumerated_.clear();
    }
  }

  std::string name() const override { return "tensor"; }

  struct Column {
    std::vector<TensorWord> words;
    std::unordered_map<TensorWord, std::size_t, TensorWordHash> index;
  };

  const Column& column(int p, int q) {
    ensure_level(p);
    static const Column empty;
    auto it = columns_.find({p, q});
    return it == columns_.end() ? empty : it->second;
  }

  std::size_t dim(int p, int q) override { return column(p, q).words.size(); }

  bool admissible(int p, const TensorWord& w) {
    if (p == 0) return true;
    const auto& cov = levels_.cover(p);
    std::uint64_t acc = 0;
    for (const auto& [pos, m] : w) acc |= cov[pos];
    return acc == ((1ULL << p) - 1);
  }

  int word_degree(const TensorWord& w) const {
    int d = 0;
    for (const auto& [pos, m] : w) d += A_->degree_of(m);
    return d;
  }

  /**
   * The Loday map of u : K_p -> K_{p'}: factors are stably sorted by target
   * (Koszul sign over odd pairs that cross) and multiplied within fibres.
   */
  std::optional<std::pair<TensorWord, T>> loday(const TensorWord& w, const std::vector<std::uint32_t>& u) const {
    const F& fld = field();
    long swaps = 0;
    for (std::size_t a = 0; a < w.size(); ++a) {
      if (A_->degree_of(w[a].second) % 2 == 0) continue;
      for (std::size_t b = a + 1; b < w.size(); ++b)
        if (A_->degree_of(w[b].second) % 2 == 1 && u[w[a].first] > u[w[b].first]) ++swaps;
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> moved;
    for (const auto& [pos, m] : w) moved.emplace_back(u[pos], m);
    std::stable_sort(moved.begin(), moved.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    T sign = sign_of(fld, swaps);
    TensorWord out;
    for (std::size_t k = 0; k < moved.size();) {
      std::size_t l = k + 1;
      std::uint32_t mono = moved[k].second;
      while (l < moved.size() && moved[l].first == moved[k].first) {
        auto prod = A_->multiply(A_->monomial(mono), A_->monomial(moved[l].second));
        if (!prod) return std::nullopt;
        sign = fld.mul(sign, prod->second);
        mono = static_cast<std::uint32_t>(A_->intern(prod->first));
        ++l;
      }
      out.emplace_back(moved[k].first, mono);
      k = l;
    }
    return std::make_pair(std::move(out), sign);
  }

  LinearMap<F> horizontal(int p, int q) override {
    const F& fld = field();
    const auto& src = column(p, q);
    const auto& dst = column(p - 1, q);
    LinearMap<F> m(fld, src.words.size(), dst.words.size());
    for (int i = 0; i <= p; ++i) {
      const auto& u = levels_.face(p, i);
      const T si = sign_of(fld, i);
      for (std::size_t k = 0; k < src.words.size(); ++k) {
        auto r = loday(src.words[k], u);
        if (!r) continue;
        add_term(fld, m.columns[k], locate(p - 1, q, dst, r->first), fld.mul(si, r->second));
      }
    }
    drop_sentinel(m);
    return m;
  }

  LinearMap<F> vertical(int p, int q) override {
    const F& fld = field();
    const auto& src = column(p, q);
    const auto& dst = column(p, q + 1);
    LinearMap<F> m(fld, src.words.size(), dst.words.size());
    for (std::size_t k = 0; k < src.words.size(); ++k) {
      const auto& w = src.words[k];
      int before = 0;
      for (std::size_t f = 0; f < w.size(); ++f) {
        const T sgn = sign_of(fld, before);
        for (const auto& [mono, c] : A_->differential(A_->monomial(w[f].second))) {
          TensorWord next = w;
          next[f].second = static_cast<std::uint32_t>(A_->intern(mono));
          add_term(fld, m.columns[k], locate(p, q + 1, dst, next), fld.mul(sgn, c));
        }
        before += A_->degree_of(w[f].second);
      }
    }
    drop_sentinel(m);
    return m;
  }

  SparseVec<F> unit() override {
    const auto& c = column(0, 0);
    SparseVec<F> u;
    u.emplace(c.index.at(TensorWord{}), field().one());
    return u;
  }

  SparseVec<F> multiply(int p, int r, const SparseVec<F>& x, int q, int s, const SparseVec<F>& y) override {
    const F& fld = field();
    const auto& cx = column(p, r);
    const auto& cy = column(q, s);
    const auto& dst = column(p + q, r + s);
    const auto& sh = shuffle_maps(p, q);
    SparseVec<F> out;
    const T outer = sign_of(fld, static_cast<long>(p) * s);
    for (const auto& [kx, ax] : x)
      for (const auto& [ky, ay] : y) {
        const T coef = fld.mul(outer, fld.mul(ax, ay));
        for (const auto& sm : sh) {
          auto wx = loday(cx.words.at(kx), sm.on_left);
          if (!wx) continue;
          auto wy = loday(cy.words.at(ky), sm.on_right);
          if (!wy) continue;
          auto prod = tensor_product(wx->first, wy->first);
          if (!prod) continue;
          T c = fld.mul(coef, fld.mul(sign_of(fld, sm.sign_exponent), fld.mul(wx->second, fld.mul(wy->second, prod->second))));
          if (!admissible(p + q, prod->first)) continue;
          auto it = dst.index.find(prod->first);
          if (it == dst.index.end()) throw InvariantViolation("product lands outside the stored column range");
          add_term(fld, out, it->second, c);
        }
      }
    return out;
  }

  LinearMap<F> act(const SimplicialMap& g, int p, int q) override {
    const F& fld = field();
    const auto& c = column(p, q);
    auto perm = levels_.permutation(g, p);
    LinearMap<F> m(fld, c.words.size(), c.words.size());
    for (std::size_t k = 0; k < c.words.size(); ++k) {
      auto r = loday(c.words[k], perm);
      if (!r) throw InvariantViolation("group element does not act by a permutation of factors");
      auto it = c.index.find(r->first);
      if (it == c.index.end()) throw InvariantViolation("group action does not preserve normalized words");
      m.set(it->second, k, r->second);
    }
    return m;
  }

  std::optional<std::string> face_identity_failure(int p) override {
    if (p < 2) return std::nullopt;
    const F& fld = field();
    for (int q = 0; q <= p + top_; ++q)
      for (const auto& w : column(p, q).words)
        for (int j = 1; j <= p; ++j)
          for (int i = 0; i < j; ++i) {
            auto a = loday(w, levels_.face(p, j));
            auto b = loday(w, levels_.face(p, i));
            std::optional<std::pair<TensorWord, T>> lhs, rhs;
            if (a) lhs = loday(a->first, levels_.face(p - 1, i));
            if (b) rhs = loday(b->first, levels_.face(p - 1, j - 1));
            if (lhs) lhs->second = fld.mul(lhs->second, a->second);
            if (rhs) rhs->second = fld.mul(rhs->second, b->second);
            const bool same = (!lhs && !rhs) ||
                              (lhs && rhs && lhs->first == rhs->first && fld.equal(lhs->second, rhs->second));
            if (!same)
              return "d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" + std::to_string(j - 1) + " d_" +
                     std::to_string(i) + " at level " + std::to_string(p);
          }
    return std::nullopt;
  }

  /// Readable form of a basis word, e.g. "x(1)*x(2)" with positions in K_p.
  std::string describe(int p, const TensorWord& w) {
    if (w.empty()) return "1";
    std::string s;
    const auto& lv = levels_.level(p);
    for (const auto& [pos, m] : w) {
      if (!s.empty()) s += " ⊗ ";
      s += A_->to_string(A_->monomial(m)) + "[" + levels_.space().simplex_label(lv.simplices[pos]) + "]";
    }
    return s;
  }

 private:
  struct ShuffleMaps {
    std::vector<std::uint32_t> on_left;   // K_p -> K_{p+q} via s_ν
    std::vector<std::uint32_t> on_right;  // K_q -> K_{p+q} via s_μ
    long sign_exponent = 0;
  };

  const std::vector<ShuffleMaps>& shuffle_maps(int p, int q) {
    auto key = std::make_pair(p, q);
    auto it = shuffle_cache_.find(key);
    if (it != shuffle_cache_.end()) return it->second;
    std::vector<ShuffleMaps> maps;
    for (const auto& sh : shuffles(p, q)) {
      ShuffleMaps m;
      m.on_left = levels_.iterated_degeneracy(p, p + q, sh.nu);
      m.on_right = levels_.iterated_degeneracy(q, p + q, sh.mu);
      m.sign_exponent = sh.sign_exponent;
      maps.push_back(std::move(m));
    }
    return shuffle_cache_.emplace(key, std::move(maps)).first->second;
  }

  /// Factorwise product with sign (-1)^{Σ_{i>j} |a_i||b_j|}.
  std::optional<std::pair<TensorWord, T>> tensor_product(const TensorWord& a, const TensorWord& b) const {
    const F& fld = field();
    long swaps = 0;
    for (const auto& [pa, ma] : a) {
      if (A_->degree_of(ma) % 2 == 0) continue;
      for (const auto& [pb, mb] : b)
        if (pb < pa && A_->degree_of(mb) % 2 == 1) ++swaps;
    }
    T sign = sign_of(fld, swaps);
    TensorWord out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.push_back(b[j++]);
      } else {
        auto prod = A_->multiply(A_->monomial(a[i].second), A_->monomial(b[j].second));
        if (!prod) return std::nullopt;
        sign = fld.mul(sign, prod->second);
        out.emplace_back(a[i].first, static_cast<std::uint32_t>(A_->intern(prod->first)));
        ++i;
        ++j;
      }
    }
    return std::make_pair(std::move(out), sign);
  }

  static constexpr std::size_t kDrop = static_cast<std::size_t>(-1);

  /// Index of a word in a normalized column; kDrop for words in a degeneracy image.
  std::size_t locate(int p, int q, const Column& c, const TensorWord& w) {
    auto it = c.index.find(w);
    if (it != c.index.end()) return it->second;
    if (!admissible(p, w)) return kDrop;
    (void)q;
    throw InvariantViolation("normalized word missing from column (" + std::to_string(p) + "," + std::to_string(q) + ")");
  }

  static void drop_sentinel(LinearMap<F>& m) {
    for (auto& col : m.columns) col.erase(kDrop);
  }

  /// Enumerates all normalized words at level p of internal degree <= p + top.
  void ensure_level(int p) {
    if (enumerated_.count({p, top_})) return;
    enumerated_.insert({p, top_});
    const int budget = p + top_;
    const auto& lv = levels_.level(p);
    const auto& cov = levels_.cover(p);
    const std::size_t n = lv.size();
    const std::uint64_t all = (p == 0) ? 0 : ((1ULL << p) - 1);
    const int dmin = A_->min_generator_degree();

    std::vector<std::vector<std::uint32_t>> monos_by_degree(std::max(budget, 0) + 1);
    for (int d = 1; d <= budget; ++d)
      for (const auto& m : A_->monomials_of_degree(d))
        monos_by_degree[d].push_back(static_cast<std::uint32_t>(A_->intern(m)));

    std::vector<std::uint64_t> suffix(n + 1, 0);
    std::vector<int> suffix_max(n + 1, 0);
    for (std::size_t k = n; k-- > 0;) {
      suffix[k] = suffix[k + 1] | cov[k];
      suffix_max[k] = std::max(suffix_max[k + 1], __builtin_popcountll(cov[k]));
    }

    std::map<int, std::vector<TensorWord>> found;
    std::size_t total = 0;
    TensorWord word;
    std::function<void(std::size_t, std::uint64_t, int)> rec = [&](std::size_t k, std::uint64_t covered, int used) {
      const std::uint64_t missing = all & ~covered;
      if (missing == 0) {
        found[used].push_back(word);
        if (++total > max_column_) throw ResourceLimit("tensor column at level " + std::to_string(p) + " is too large");
      }
      if (k >= n) return;
      if ((missing & ~suffix[k]) != 0) return;
      if (missing != 0) {
        const int need = (__builtin_popcountll(missing) + suffix_max[k] - 1) / std::max(suffix_max[k], 1);
        if (used + need * dmin > budget) return;
      }
      if (used + dmin > budget) return;
      for (std::size_t pos = k; pos < n; ++pos) {
        if ((missing & ~suffix[pos]) != 0) break;
        for (int d = dmin; used + d <= budget; ++d)
          for (std::uint32_t m : monos_by_degree[d]) {
            word.emplace_back(static_cast<std::uint32_t>(pos), m);
            rec(pos + 1, covered | cov[pos], used + d);
            word.pop_back();
          }
      }
    };
    rec(0, 0, 0);
    for (auto& [q, words] : found) {
      auto& col = columns_[{p, q}];
      std::sort(words.begin(), words.end());
      for (auto& w : words) {
        col.index.emplace(w, col.words.size());
        col.words.push_back(std::move(w));
      }
    }
  }

  LevelCache levels_;
  std::shared_ptr<const FreeGCAlgebra<F>> A_;
  std::size_t max_column_;
  int top_ = 0;
  std::set<std::pair<int, int>> enumerated_;
  std::map<std::pair<int, int>, Column> columns_;
  std::map<std::pair<int, int>, std::vector<ShuffleMaps>> shuffle_cache_;
};

/**
 * Columns given by normalized simplicial cochains of L^{×#K_p}.
 */
template <class F>
class SimplicialColumns : public ColumnModel<F> {
 public:
  SimplicialColumns(SSetPtr K, SSetPtr L, F field, bool reversed = false, std::size_t max_cells = 200000)
      : levels_(std::move(K), reversed), L_(std::move(L)), field_(std::move(field)), max_cells_(max_cells) {}

  const F& field() const override { return field_; }
  std::string name() const override { return "simplicial"; }

  void set_top_degree(int top) override {
    if (top != top_) {
      top_ = top;
      products_.clear();
      quotients_.clear();
      cochains_.clear();
    }
  }

  /// L^{×#K_p} with cells up to dimension p + top.
  const ProductSet& product_at(int p) {
    auto it = products_.find(p);
    if (it != products_.end()) return it->second;
    const std::size_t m = levels_.level(p).size();
    if (m > 6) throw ResourceLimit("simplicial column backend needs #K_p <= 6 (level " + std::to_string(p) + ")");
    std::vector<SSetPtr> factors(m, L_);
    // degeneracy pullbacks from level p into level p + 1 need one extra dimension
    const int bound = std::min<int>(p + 1 + top_, static_cast<int>(m) * L_->dim());
    ProductSet P = product(factors, std::max(bound, 0));
    if (P.set->size() > max_cells_) throw ResourceLimit("simplicial column product too large");
    return products_.emplace(p, std::move(P)).first->second;
  }

  /// Pullback along (y_t) -> (y_{u(s)}): C^q(L^S) -> C^q(L^T) for u : S -> T.
  LinearMap<F> pullback(int from_level, int to_level, const std::vector<std::uint32_t>& u, int q) {
    const auto& PS = product_at(from_level);  // L^{K_from}
    const auto& PT = product_at(to_level);    // L^{K_to}
    const auto& S = *PS.set;
    const auto& Tt = *PT.set;
    LinearMap<F> m(field_, S.count(q), Tt.count(q));
    for (CellId c : Tt.cells_of_dim(q)) {
      const auto& comp = PT.components[c];
      std::vector<SimplexRef> image(u.size());
      for (std::size_t s = 0; s < u.size(); ++s) image[s] = comp[u[s]];
      SimplexRef r = PS.normalize(image);
      if (!r.degenerate()) m.set(Tt.position(c), S.position(r.cell), field_.one());
    }
    return m;
  }

  const QuotientData<F>& quotient(int p, int q) {
    auto key = std::make_pair(p, q);
    auto it = quotients_.find(key);
    if (it != quotients_.end()) return it->second;
    const auto& P = product_at(p);
    std::vector<LinearMap<F>> degs;
    for (int j = 0; j < p; ++j) degs.push_back(pullback(p - 1, p, levels_.degeneracy(p, j), q));
    return quotients_.emplace(key, normalize_quotient(field_, P.set->count(q), degs)).first->second;
  }

  std::size_t dim(int p, int q) override {
    if (q < 0 || q > p + top_) return 0;
    return quotient(p, q).basis.size();
  }

  LinearMap<F> horizontal(int p, int q) override {
    const auto& src = quotient(p, q);
    const auto& dst = quotient(p - 1, q);
    LinearMap<F> total(field_, product_at(p).set->count(q), product_at(p - 1).set->count(q));
    for (int i = 0; i <= p; ++i) total = total.plus(pullback(p, p - 1, levels_.face(p, i), q).scaled_by(sign_of(field_, i)));
    return normalized(total, src, dst);
  }

  LinearMap<F> vertical(int p, int q) override {
    const auto& src = quotient(p, q);
    const auto& dst = quotient(p, q + 1);
    return normalized(cochain_differential(p, q), src, dst);
  }

  SparseVec<F> unit() override {
    const auto& P = product_at(0);
    const auto& Q = quotient(0, 0);
    return Q.project(unit_cochain(*P.set, field_));
  }

  SparseVec<F> multiply(int p, int r, const SparseVec<F>& x, int q, int s, const SparseVec<F>& y) override {
    const auto& qx = quotient(p, r);
    const auto& qy = quotient(q, s);
    const auto& qz = quotient(p + q, r + s);
    const auto& P = *product_at(p + q).set;
    SparseVec<F> lx = lift(qx, x), ly = lift(qy, y);
    SparseVec<F> acc;
    for (const auto& sh : shuffles(p, q)) {
      auto left = pullback(p, p + q, levels_.iterated_degeneracy(p, p + q, sh.nu), r).apply(lx);
      auto right = pullback(q, p + q, levels_.iterated_degeneracy(q, p + q, sh.mu), s).apply(ly);
      add_scaled(field_, acc, sign_of(field_, sh.sign_exponent), cup_product(P, field_, r, left, s, right));
    }
    return scaled(field_, qz.project(acc), sign_of(field_, static_cast<long>(p) * s));
  }

  LinearMap<F> act(const SimplicialMap& g, int p, int q) override {
    const auto& Q = quotient(p, q);
    return normalized(pullback(p, p, levels_.permutation(g, p), q), Q, Q);
  }

  std::optional<std::string> face_identity_failure(int p) override {
    if (p < 2) return std::nullopt;
    for (int q = 0; q <= p + top_ - 2; ++q)
      for (int j = 1; j <= p; ++j)
        for (int i = 0; i < j; ++i) {
          auto lhs = pullback(p - 1, p - 2, levels_.face(p - 1, i), q).after(pullback(p, p - 1, levels_.face(p, j), q));
          auto rhs =
              pullback(p - 1, p - 2, levels_.face(p - 1, j - 1), q).after(pullback(p, p - 1, levels_.face(p, i), q));
          if (!lhs.equals(rhs))
            return "d_" + std::to_string(i) + " d_" + std::to_string(j) + " mismatch at level " + std::to_string(p);
        }
    return std::nullopt;
  }

 private:
  SparseVec<F> lift(const QuotientData<F>& Q, const SparseVec<F>& v) const {
    SparseVec<F> out;
    for (const auto& [k, c] : v) out.emplace(Q.basis.at(k), c);
    return out;
  }

  LinearMap<F> normalized(const LinearMap<F>& ambient, const QuotientData<F>& src, const QuotientData<F>& dst) const {
    LinearMap<F> m(field_, src.basis.size(), dst.basis.size());
    for (std::size_t k = 0; k < src.basis.size(); ++k) m.columns[k] = dst.project(ambient.columns[src.basis[k]]);
    return m;
  }

  LinearMap<F> cochain_differential(int p, int q) {
    auto key = std::make_pair(p, q);
    auto it = cochains_.find(key);
    if (it != cochains_.end()) return it->second;
    const auto& S = *product_at(p).set;
    LinearMap<F> d(field_, S.count(q), S.count(q + 1));
    for (CellId c : S.cells_of_dim(q + 1))
      for (const auto& [r, v] : integral_boundary(S, c)) d.set(S.position(c), r, field_.from_int(v));
    return cochains_.emplace(key, d).first->second;
  }

  LevelCache levels_;
  SSetPtr L_;
  F field_;
  std::size_t max_cells_;
  int top_ = 0;
  std::map<int, ProductSet> products_;
  std::map<std::pair<int, int>, QuotientData<F>> quotients_;
  std::map<std::pair<int, int>, LinearMap<F>> cochains_;
};

/// The truncation bound p_max = c(N+1) + dim(K) + 1; requires dim(K) <= c.
inline int default_pmax(int dim_k, int connectivity, int max_degree) {
  if (dim_k > connectivity)
    throw HypothesisViolation("dim(K) = " + std::to_string(dim_k) + " exceeds the connectivity c = " +
                              std::to_string(connectivity) +
                              " of the target; the convergence hypothesis dim(K) <= Conn(Y) fails");
  return connectivity * (max_degree + 1) + dim_k + 1;
}

inline std::string pmax_justification() {
  return "every admissible support element covers at most dim(K) of the p degeneracy positions, so a column at "
         "level p has at least p/dim(K) non-unit factors, each of degree >= c+1; hence q - p >= p/c and columns "
         "with p > c(N+1) do not reach total degrees <= N+1";
}

/// One entry of the multiplication table on cohomology representatives.
struct RingEntry {
  int left_degree = 0;
  int right_degree = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::string> product;  // coordinates in the representative basis of degree left+right
};

struct NamedCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

/**
 * The truncated total complex |N C(Y^K)| with its cohomology.
 */
template <class F>
class MappingComplex {
 public:
  MappingComplex(std::shared_ptr<ColumnModel<F>> columns, int max_degree, int pmax)
      : cols_(std::move(columns)), N_(max_degree), pmax_(pmax), bicomplex_(cols_->field()), total_(cols_->field()) {
    if (max_degree < 0) throw InvalidInput("max degree must be nonnegative");
    if (pmax < 0) throw InvalidInput("p_max must be nonnegative");
    cols_->set_top_degree(N_ + 1);
    build();
  }

  const F& field() const { return cols_->field(); }
  int max_degree() const { return N_; }
  int pmax() const { return pmax_; }
  ColumnModel<F>& columns() { return *cols_; }
  const Bicomplex<F>& bicomplex() const { return bicomplex_; }
  const GradedComplex<F>& total() const { return total_; }
  const TotalLayout& layout() const { return layout_; }
  const std::vector<HomologyDegree<F>>& cohomology() const { return homology_; }
  int lowest_degree() const { return -pmax_; }

  std::vector<std::size_t> betti() const {
    std::vector<std::size_t> out;
    for (int n = 0; n <= N_; ++n) out.push_back(homology_[n].dim());
    return out;
  }

  /// Dimensions of the total complex in negative degrees (expected to vanish).
  std::size_t negative_mass() const {
    std::size_t s = 0;
    for (int n = -pmax_; n < 0; ++n) s += total_.dim(n);
    return s;
  }

  /// The (p, q) block of a total-degree-n vector.
  SparseVec<F> block(int n, int p, const SparseVec<F>& v) const {
    SparseVec<F> out;
    auto off = layout_.offset(n, p);
    if (!off) return out;
    const std::size_t d = bicomplex_.dim(p, n + p);
    for (auto it = v.lower_bound(*off); it != v.end() && it->first < *off + d; ++it) out.emplace(it->first - *off, it->second);
    return out;
  }

  void add_block(int n, int p, const SparseVec<F>& b, SparseVec<F>& into) const {
    auto off = layout_.offset(n, p);
    if (!off) {
      if (!b.empty()) throw InvariantViolation("block outside the stored range");
      return;
    }
    for (const auto& [k, c] : b) add_term(field(), into, *off + k, c);
  }

  /// The product of total-degree elements; blocks beyond p_max are dropped (they vanish in range).
  SparseVec<F> multiply(int a, const SparseVec<F>& x, int b, const SparseVec<F>& y) {
    SparseVec<F> out;
    if (a + b > N_ + 1) throw InvalidInput("product degree beyond the stored range");
    auto bx = layout_.blocks.find(a);
    auto by = layout_.blocks.find(b);
    if (bx == layout_.blocks.end() || by == layout_.blocks.end()) return out;
    for (const auto& [p, offx] : bx->second) {
      auto xb = block(a, p, x);
      if (xb.empty()) continue;
      for (const auto& [q, offy] : by->second) {
        if (p + q > pmax_) continue;
        auto yb = block(b, q, y);
        if (yb.empty()) continue;
        add_block(a + b, p + q, cols_->multiply(p, a + p, xb, q, b + q, yb), out);
      }
    }
    return out;
  }

  SparseVec<F> unit() const {
    SparseVec<F> out;
    add_block(0, 0, cols_->unit(), out);
    return out;
  }

  /// Multiplication table on representatives for degrees a + b <= N.
  std::vector<RingEntry> ring_table() {
    std::vector<RingEntry> out;
    for (int a = 0; a <= N_; ++a)
      for (int b = 0; a + b <= N_; ++b)
        for (std::size_t i = 0; i < homology_[a].dim(); ++i)
          for (std::size_t j = 0; j < homology_[b].dim(); ++j) {
            auto prod = multiply(a, homology_[a].representatives()[i], b, homology_[b].representatives()[j]);
            auto coords = homology_[a + b].class_of(prod);
            if (!coords) throw InvariantViolation("product of cocycles is not a cocycle");
            RingEntry e{a, b, i, j, {}};
            for (const auto& c : *coords) e.product.push_back(field().to_string(c));
            out.push_back(std::move(e));
          }
    return out;
  }

  /// The chain map of an automorphism g in total degree n.
  LinearMap<F> act(const SimplicialMap& g, int n) {
    LinearMap<F> m(field(), total_.dim(n), total_.dim(n));
    auto it = layout_.blocks.find(n);
    if (it == layout_.blocks.end()) return m;
    for (const auto& [p, off] : it->second) {
      auto blockmap = cols_->act(g, p, n + p);
      for (std::size_t k = 0; k < blockmap.domain_dim; ++k)
        for (const auto& [r, c] : blockmap.columns[k]) m.set(off + r, off + k, c);
    }
    return m;
  }

  /// Matrices of g on H^n in representative coordinates; checks that g commutes with D.
  LinearMap<F> act_on_cohomology(const SimplicialMap& g, int n) {
    auto here = act(g, n);
    auto next = act(g, n + 1);
    if (!total_.differential(n).after(here).equals(next.after(total_.differential(n))))
      throw InvariantViolation("group action does not commute with D in degree " + std::to_string(n));
    return induced_on_homology(here, homology_[n], homology_[n]);
  }

 private:
  void build() {
    const int top = N_ + 1;
    auto& B = bicomplex_;
    for (int p = 0; p <= pmax_; ++p)
      for (int q = 0; q <= p + top; ++q) {
        const std::size_t d = cols_->dim(p, q);
        if (d > 0) B.dims[{p, q}] = d;
      }
    for (const auto& [pq, d] : B.dims) {
      auto [p, q] = pq;
      if (q - p > N_) continue;
      B.vertical.emplace(pq, cols_->vertical(p, q));
      if (p >= 1) B.horizontal.emplace(pq, cols_->horizontal(p, q));
    }
    total_ = total_complex(B, -pmax_, top, &layout_);
    for (int n = 0; n <= N_; ++n) homology_.emplace_back(field(), n, total_.differential(n - 1), total_.differential(n));
  }

  std::shared_ptr<ColumnModel<F>> cols_;
  int N_;
  int pmax_;
  Bicomplex<F> bicomplex_;
  GradedComplex<F> total_;
  TotalLayout layout_;
  std::vector<HomologyDegree<F>> homology_;
};

/// Coefficients for a mapping-space computation.
template <class F>
struct CoefficientModel {
  enum class Backend { simplicial, tensor };
  Backend backend = Backend::tensor;
  int connectivity = 0;
  SSetPtr target;                                  // simplicial backend
  std::shared_ptr<const FreeGCAlgebra<F>> algebra;  // tensor backend

  static CoefficientModel tensor(std::shared_ptr<const FreeGCAlgebra<F>> A, int c) {
    CoefficientModel m;
    m.backend = Backend::tensor;
    m.algebra = std::move(A);
    m.connectivity = c;
    return m;
  }

  static CoefficientModel simplicial(SSetPtr L, int c) {
    CoefficientModel m;
    m.backend = Backend::simplicial;
    m.target = std::move(L);
    m.connectivity = c;
    return m;
  }

  std::string backend_name() const { return backend == Backend::tensor ? "tensor" : "simplicial"; }

  /// Checks the connectivity declaration and algebra invariants.
  void validate() const {
    if (connectivity < 0) throw InvalidInput("connectivity must be nonnegative");
    if (backend == Backend::tensor) {
      if (!algebra) throw InvalidInput("tensor coefficients need an algebra");
      if (auto g = algebra->square_failure()) throw InvalidInput("d^2 != 0 on generator '" + *g + "'");
      if (algebra->min_generator_degree() <= connectivity)
        throw InvalidInput("a generator has degree <= the declared connectivity " + std::to_string(connectivity));
    } else {
      if (!target) throw InvalidInput("simplicial coefficients need a target");
      if (target->count(0) != 1) throw InvalidInput("simplicial target must have exactly one 0-cell");
      for (int d = 1; d <= connectivity; ++d)
        if (target->count(d) != 0)
          throw InvalidInput("simplicial target has a nondegenerate cell in dimension " + std::to_string(d) +
                             " <= declared connectivity");
      ::mapcoh::validate(*target);
    }
  }
};

template <class F>
std::shared_ptr<ColumnModel<F>> make_columns(SSetPtr K, const CoefficientModel<F>& coeff, const F& field,
                                             bool reversed = false) {
  if (coeff.backend == CoefficientModel<F>::Backend::tensor)
    return std::make_shared<TensorColumns<F>>(std::move(K), coeff.algebra, reversed);
  return std::make_shared<SimplicialColumns<F>>(std::move(K), coeff.target, field, reversed);
}

struct MappingOptions {
  int max_degree = 6;
  std::optional<int> pmax;  // explicit override of the default bound
  bool stabilization = true;
  bool ring = true;
  bool reversed_order = false;
  bool order_check = false;
  std::size_t random_pairs = 100;
  std::uint32_t seed = 20240611;
};

template <class F>
struct MappingCohomologyResult {
  int max_degree = 0;
  int pmax = 0;
  bool pmax_auto = true;
  std::string backend;
  bool model_dependent = false;
  std::vector<std::size_t> betti;
  std::optional<std::vector<std::size_t>> stabilized_betti;
  std::optional<std::vector<std::size_t>> reversed_betti;
  std::vector<RingEntry> ring;
  std::vector<NamedCheck> checks;
  std::shared_ptr<MappingComplex<F>> complex;

  bool stable() const { return !stabilized_betti || *stabilized_betti == betti; }
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.pass; });
  }
};

/// Algebraic invariants of a built complex: D² = 0, ∂δ = δ∂, face identities, unit, Leibniz, associativity.
template <class F>
std::vector<NamedCheck> invariant_checks(MappingComplex<F>& M, std::size_t pairs, std::uint32_t seed) {
  std::vector<NamedCheck> out;
  const F& field = M.field();
  {
    auto f = M.total().first_square_failure();
    out.push_back({"D^2 = 0", !f, f ? "fails in degree " + std::to_string(*f) : "all stored degrees"});
  }
  {
    auto f = M.bicomplex().first_identity_failure();
    out.push_back({"bicomplex identities (d^2 = 0, delta^2 = 0, d delta = delta d)", !f,
                   f ? "fails at (" + std::to_string(f->first) + "," + std::to_string(f->second) + ")" : "all stored bidegrees"});
  }
  {
    std::optional<std::string> f;
    for (int p = 2; p <= std::min(M.pmax(), 4) && !f; ++p) f = M.columns().face_identity_failure(p);
    out.push_back({"face identities d_i d_j = d_{j-1} d_i", !f, f ? *f : "levels <= 4"});
  }

  // homogeneous random elements from blocks of total degree <= N
  struct Block {
    int n, p;
    std::size_t dim;
  };
  std::vector<Block> blocks;
  for (const auto& [n, list] : M.layout().blocks) {
    if (n < 0 || n > M.max_degree()) continue;
    for (const auto& [p, off] : list) blocks.push_back({n, p, M.bicomplex().dim(p, n + p)});
  }
  std::mt19937 rng(seed);
  auto random_vec = [&](const Block& b) {
    SparseVec<F> local;
    std::uniform_int_distribution<long> val(-2, 2);
    for (std::size_t k = 0; k < b.dim; ++k) add_term(field, local, k, field.from_int(val(rng)));
    if (local.empty()) local.emplace(rng() % b.dim, field.one());
    SparseVec<F> v;
    M.add_block(b.n, b.p, local, v);
    return v;
  };

  {
    bool ok = true;
    std::string detail = "x*1 = 1*x = x on every block";
    auto one = M.unit();
    for (const auto& b : blocks) {
      auto x = random_vec(b);
      if (!vec_equal(field, M.multiply(b.n, x, 0, one), x) || !vec_equal(field, M.multiply(0, one, b.n, x), x)) {
        ok = false;
        detail = "unit fails on block (" + std::to_string(b.p) + "," + std::to_string(b.n + b.p) + ")";
        break;
      }
    }
    out.push_back({"unit", ok, detail});
  }

  std::size_t leibniz = 0, assoc = 0;
  bool leibniz_ok = true, assoc_ok = true;
  std::string leibniz_detail, assoc_detail;
  if (!blocks.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
    std::size_t attempts = 0;
    while ((leibniz < pairs || assoc < pairs) && attempts < 200 * pairs) {
      ++attempts;
      const auto& bx = blocks[pick(rng)];
      const auto& by = blocks[pick(rng)];
      if (bx.p + by.p > M.pmax()) continue;
      const int a = bx.n, b = by.n;
      if (leibniz < pairs && a + b + 1 <= M.max_degree() + 1 && bx.p + by.p <= M.pmax()) {
        auto x = random_vec(bx);
        auto y = random_vec(by);
        auto lhs = M.total().differential(a + b).apply(M.multiply(a, x, b, y));
        auto rhs = M.multiply(a + 1, M.total().differential(a).apply(x), b, y);
        add_scaled(field, rhs, sign_of(field, a), M.multiply(a, x, b + 1, M.total().differential(b).apply(y)));
        ++leibniz;
        if (!vec_equal(field, lhs, rhs) && leibniz_ok) {
          leibniz_ok = false;
          leibniz_detail = "fails for blocks (" + std::to_string(bx.p) + "," + std::to_string(bx.n + bx.p) + ") x (" +
                           std::to_string(by.p) + "," + std::to_string(by.n + by.p) + ")";
        }
      }
      if (assoc < pairs) {
        const auto& bz = blocks[pick(rng)];
        if (a + b + bz.n <= M.max_degree() && bx.p + by.p + bz.p <= M.pmax()) {
          auto x = random_vec(bx);
          auto y = random_vec(by);
          auto z = random_vec(bz);
          auto l = M.multiply(a + b, M.multiply(a, x, b, y), bz.n, z);
          auto r = M.multiply(a, x, b + bz.n, M.multiply(b, y, bz.n, z));
          ++assoc;
          if (!vec_equal(field, l, r) && assoc_ok) {
            assoc_ok = false;
            assoc_detail = "fails for blocks at levels " + std::to_string(bx.p) + "," + std::to_string(by.p) + "," +
                           std::to_string(bz.p);
          }
        }
      }
    }
  }
  if (leibniz_ok) leibniz_detail = std::to_string(leibniz) + " random homogeneous pairs";
  if (assoc_ok) assoc_detail = std::to_string(assoc) + " random homogeneous triples";
  out.push_back({"Leibniz rule", leibniz_ok && leibniz >= std::min<std::size_t>(pairs, 1), leibniz_detail});
  out.push_back({"associativity", assoc_ok && assoc >= std::min<std::size_t>(pairs, 1), assoc_detail});
  return out;
}

/**
 * H^{<=N}(Y^{|K|}) with ring structure, stabilization and invariant checks.
 */
template <class F>
MappingCohomologyResult<F> mapping_cohomology(SSetPtr K, const CoefficientModel<F>& coeff, const F& field,
                                              const MappingOptions& opt = {}) {
  coeff.validate();
  validate(*K);
  MappingCohomologyResult<F> res;
  res.max_degree = opt.max_degree;
  res.backend = coeff.backend_name();
  res.model_dependent = !field.characteristic() ? false : coeff.backend == CoefficientModel<F>::Backend::tensor;
  const int bound = default_pmax(K->dim(), coeff.connectivity, opt.max_degree);
  res.pmax_auto = !opt.pmax.has_value();
  res.pmax = opt.pmax.value_or(bound);

  auto build = [&](int pmax, bool reversed) {
    return std::make_shared<MappingComplex<F>>(make_columns(K, coeff, field, reversed), opt.max_degree, pmax);
  };
  res.complex = build(res.pmax, opt.reversed_order);
  res.betti = res.complex->betti();
  if (opt.ring) res.ring = res.complex->ring_table();
  res.checks = invariant_checks(*res.complex, opt.random_pairs, opt.seed);
  {
    auto neg = res.complex->negative_mass();
    res.checks.push_back({"negative total degrees vanish", neg == 0, std::to_string(neg) + " basis elements"});
  }
  if (opt.stabilization) {
    res.stabilized_betti = build(res.pmax + 2, opt.reversed_order)->betti();
    res.checks.push_back({"stabilization betti(p_max) = betti(p_max + 2)", res.stable(),
                          "p_max = " + std::to_string(res.pmax)});
  }
  if (opt.order_check) {
    res.reversed_betti = build(res.pmax, !opt.reversed_order)->betti();
    res.checks.push_back({"level order independence", *res.reversed_betti == res.betti, "reversed canonical order"});
  }
  return res;
}

}  // namespace mapcoh
